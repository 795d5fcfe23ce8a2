#include "tz/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tz {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long v : row) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix: row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::power(unsigned long e) const {
    if (!is_square()) throw std::invalid_argument("IntMatrix::power: matrix not square");
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        e >>= 1UL;
        if (e > 0) base = base * base;
    }
    return result;
}

Integer IntMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("IntMatrix::trace: matrix not square");
    Integer t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

IntMatrix IntMatrix::column_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw std::out_of_range("IntMatrix::column_block");
    IntMatrix b(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
    return b;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
    if (other.rows_ != rows_) throw std::invalid_argument("IntMatrix::hconcat: row mismatch");
    IntMatrix c(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) c(i, cols_ + j) = other(i, j);
    }
    return c;
}

std::vector<std::vector<Integer>> IntMatrix::to_rows() const {
    std::vector<std::vector<Integer>> out(rows_, std::vector<Integer>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    }
    for (const auto& x : c.data_) guard_bits(x);
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: shape mismatch in sum");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: shape mismatch in difference");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

Integer determinant(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = std::move(v);
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Polynomial characteristic_polynomial(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("characteristic_polynomial: matrix not square");
    const std::size_t n = m.rows();
    // c[n] = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k.
    std::vector<Integer> c(n + 1);
    c[n] = 1;
    IntMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        Integer t = (m * mk).trace();
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), k);
        c[n - k] = -t;
    }
    return Polynomial::from_integers(c);
}

Polynomial reciprocal_characteristic_polynomial(const IntMatrix& m) {
    return characteristic_polynomial(m).reversed(m.rows());
}

namespace {

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current(k);
    for (std::size_t i = 0; i < k; ++i) current[i] = i;
    if (k > n) return out;
    while (true) {
        out.push_back(current);
        std::size_t i = k;
        while (i > 0 && current[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++current[i - 1];
        for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
    }
    return out;
}

}  // namespace

IntMatrix exterior_power(const IntMatrix& m, std::size_t k) {
    if (!m.is_square()) throw std::invalid_argument("exterior_power: matrix not square");
    if (k > m.rows()) throw std::invalid_argument("exterior_power: k exceeds dimension");
    if (k == 0) return IntMatrix::identity(1);
    const auto subsets = k_subsets(m.rows(), k);
    IntMatrix out(subsets.size(), subsets.size());
    IntMatrix minor(k, k);
    for (std::size_t r = 0; r < subsets.size(); ++r) {
        for (std::size_t c = 0; c < subsets.size(); ++c) {
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(subsets[r][i], subsets[c][j]);
            out(r, c) = determinant(minor);
        }
    }
    return out;
}

namespace {

/// Unimodular bookkeeping for the Smith reduction.
class SmithWorkspace {
public:
    explicit SmithWorkspace(const IntMatrix& m)
        : d(m),
          left(IntMatrix::identity(m.rows())),
          left_inv(IntMatrix::identity(m.rows())),
          right(IntMatrix::identity(m.cols())),
          right_inv(IntMatrix::identity(m.cols())) {}

    // row_i += c * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& c) {
        for (std::size_t k = 0; k < d.cols(); ++k) d(i, k) += c * d(j, k);
        for (std::size_t k = 0; k < left.cols(); ++k) left(i, k) += c * left(j, k);
        for (std::size_t k = 0; k < left_inv.rows(); ++k) left_inv(k, j) -= c * left_inv(k, i);
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < d.cols(); ++k) std::swap(d(i, k), d(j, k));
        for (std::size_t k = 0; k < left.cols(); ++k) std::swap(left(i, k), left(j, k));
        for (std::size_t k = 0; k < left_inv.rows(); ++k) std::swap(left_inv(k, i), left_inv(k, j));
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < d.cols(); ++k) d(i, k) = -d(i, k);
        for (std::size_t k = 0; k < left.cols(); ++k) left(i, k) = -left(i, k);
        for (std::size_t k = 0; k < left_inv.rows(); ++k) left_inv(k, i) = -left_inv(k, i);
    }
    // col_j += c * col_i
    void add_col(std::size_t j, std::size_t i, const Integer& c) {
        for (std::size_t k = 0; k < d.rows(); ++k) d(k, j) += c * d(k, i);
        for (std::size_t k = 0; k < right.rows(); ++k) right(k, j) += c * right(k, i);
        for (std::size_t k = 0; k < right_inv.cols(); ++k) right_inv(i, k) -= c * right_inv(j, k);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < d.rows(); ++k) std::swap(d(k, i), d(k, j));
        for (std::size_t k = 0; k < right.rows(); ++k) std::swap(right(k, i), right(k, j));
        for (std::size_t k = 0; k < right_inv.cols(); ++k) std::swap(right_inv(i, k), right_inv(j, k));
    }

    IntMatrix d, left, left_inv, right, right_inv;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithWorkspace w(m);
    IntMatrix& d = w.d;
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t diag = std::min(rows, cols);

    for (std::size_t t = 0; t < diag; ++t) {
        // Pivot: nonzero entry of least absolute value in the trailing block.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d(i, j) != 0 && (pr == rows || abs(d(i, j)) < abs(d(pr, pc)))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        bool done = false;
        while (!done) {
            done = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                w.add_row(i, t, -q);
                if (d(i, t) != 0) done = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                w.add_col(j, t, -q);
                if (d(t, j) != 0) done = false;
            }
            if (!done) {
                // Move the smallest remainder in row/column t onto the diagonal.
                std::size_t best_r = t, best_c = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (d(i, t) != 0 && abs(d(i, t)) < abs(d(best_r, best_c))) {
                        best_r = i;
                        best_c = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(t, j) != 0 && abs(d(t, j)) < abs(d(best_r, best_c))) {
                        best_r = t;
                        best_c = j;
                    }
                w.swap_rows(t, best_r);
                w.swap_cols(t, best_c);
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            for (std::size_t i = t + 1; i < rows && done; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t()) == 0) {
                        w.add_row(t, i, 1);
                        done = false;
                        break;
                    }
        }
        if (d(t, t) < 0) w.negate_row(t);
        guard_bits(d(t, t));
    }

    SmithForm out;
    out.invariants.resize(diag);
    for (std::size_t i = 0; i < diag; ++i) {
        out.invariants[i] = d(i, i);
        if (d(i, i) != 0) ++out.rank;
    }
    out.left = std::move(w.left);
    out.left_inverse = std::move(w.left_inv);
    out.right = std::move(w.right);
    out.right_inverse = std::move(w.right_inv);
    return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    const SmithForm s = smith_normal_form(m);
    return s.right.column_block(s.rank, m.cols() - s.rank);
}

}  // namespace tz
