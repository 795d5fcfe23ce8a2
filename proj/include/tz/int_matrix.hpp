#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "tz/integer.hpp"
#include "tz/polynomial.hpp"

namespace tz {

/// Dense rectangular matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    /// Throws std::invalid_argument unless every row has the same length.
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
    static IntMatrix diagonal(const std::vector<Integer>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix power(unsigned long e) const;
    Integer trace() const;
    /// Columns [first, first + count).
    IntMatrix column_block(std::size_t first, std::size_t count) const;
    /// Horizontal concatenation [*this | other].
    IntMatrix hconcat(const IntMatrix& other) const;
    std::vector<std::vector<Integer>> to_rows() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

/// det(z I - M), monic, via the Faddeev-LeVerrier recursion.
Polynomial characteristic_polynomial(const IntMatrix& m);

/// det(I - M z).
Polynomial reciprocal_characteristic_polynomial(const IntMatrix& m);

/// k-th exterior power: the C(n,k) x C(n,k) matrix of k x k minors, rows and
/// columns indexed by k-subsets in lexicographic order.
IntMatrix exterior_power(const IntMatrix& m, std::size_t k);

/// Result of a Smith normal form reduction: left * M * right = diag(invariants).
struct SmithForm {
    std::vector<Integer> invariants;  ///< min(rows, cols) entries, d_i | d_{i+1}, zeros last
    std::size_t rank = 0;
    IntMatrix left;
    IntMatrix left_inverse;
    IntMatrix right;
    IntMatrix right_inverse;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Basis (as columns) of the integer kernel {x in Z^cols : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

}  // namespace tz
