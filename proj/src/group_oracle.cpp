#include "tz/group_oracle.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tz/series.hpp"

namespace tz {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

Integer mod_floor(const Integer& x, const Integer& n) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return r;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

using Permutation = std::vector<std::size_t>;

FiniteGroupEndo permutation_group(const std::vector<Permutation>& generators) {
    const std::size_t points = generators.front().size();
    Permutation id(points);
    std::iota(id.begin(), id.end(), std::size_t{0});
    auto compose = [](const Permutation& a, const Permutation& b) {
        Permutation c(a.size());
        for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
        return c;
    };
    std::vector<Permutation> elements{id};
    std::map<Permutation, std::size_t> index{{id, 0}};
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (const auto& g : generators) {
            Permutation p = compose(elements[i], g);
            if (index.emplace(p, elements.size()).second) elements.push_back(std::move(p));
        }
    std::vector<std::vector<std::size_t>> table(elements.size(), std::vector<std::size_t>(elements.size()));
    for (std::size_t a = 0; a < elements.size(); ++a)
        for (std::size_t b = 0; b < elements.size(); ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
    std::vector<std::size_t> endo(elements.size());
    std::iota(endo.begin(), endo.end(), std::size_t{0});
    return FiniteGroupEndo(std::move(table), 0, std::move(endo));
}

}  // namespace

FiniteGroupEndo::FiniteGroupEndo(std::vector<std::vector<std::size_t>> table, std::size_t identity,
                                 std::vector<std::size_t> endo)
    : FiniteGroupEndo(Trusted{}, std::move(table), identity, std::move(endo)) {
    const std::size_t n = table_.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw std::invalid_argument("group: multiplication is not associative at (" + idx(a) + ", " +
                                                idx(b) + ", " + idx(c) + ")");
}

FiniteGroupEndo::FiniteGroupEndo(Trusted, std::vector<std::vector<std::size_t>> table, std::size_t identity,
                                 std::vector<std::size_t> endo)
    : table_(std::move(table)), identity_(identity), endo_(std::move(endo)) {
    const std::size_t n = table_.size();
    if (n == 0) throw std::invalid_argument("group: Cayley table is empty");
    if (identity_ >= n) throw std::invalid_argument("group: identity index " + idx(identity_) + " out of range");
    if (endo_.size() != n)
        throw std::invalid_argument("group: endomorphism table has " + idx(endo_.size()) + " entries, expected " +
                                    idx(n));
    for (std::size_t a = 0; a < n; ++a) {
        if (table_[a].size() != n) throw std::invalid_argument("group: Cayley table row " + idx(a) + " has wrong length");
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] >= n)
                throw std::invalid_argument("group: m[" + idx(a) + "][" + idx(b) + "] out of range");
        if (endo_[a] >= n) throw std::invalid_argument("group: e[" + idx(a) + "] out of range");
    }
    for (std::size_t a = 0; a < n; ++a)
        if (table_[identity_][a] != a || table_[a][identity_] != a)
            throw std::invalid_argument("group: " + idx(identity_) + " is not an identity (fails at " + idx(a) + ")");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_) {
                inverse_[a] = b;
                break;
            }
        if (inverse_[a] == n) throw std::invalid_argument("group: element " + idx(a) + " has no inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (endo_[table_[a][b]] != table_[endo_[a]][endo_[b]])
                throw std::invalid_argument("group: e is not a homomorphism: e(" + idx(a) + "*" + idx(b) +
                                            ") != e(" + idx(a) + ")*e(" + idx(b) + ")");
}

std::vector<std::size_t> FiniteGroupEndo::endo_power(unsigned long n) const {
    std::vector<std::size_t> out(order());
    std::iota(out.begin(), out.end(), std::size_t{0});
    for (unsigned long k = 0; k < n; ++k)
        for (auto& x : out) x = endo_[x];
    return out;
}

FiniteGroupEndo FiniteGroupEndo::with_endomorphism(std::vector<std::size_t> endo) const {
    return FiniteGroupEndo(Trusted{}, table_, identity_, std::move(endo));
}

Integer twisted_classes(const FiniteGroupEndo& g, unsigned long n) {
    if (n == 0) throw std::invalid_argument("twisted_classes: n must be >= 1");
    const std::size_t order = g.order();
    const auto phi_n = g.endo_power(n);
    UnionFind classes(order);
    std::size_t count = order;
    for (std::size_t h = 0; h < order; ++h) {
        const std::size_t twist = g.inverse(phi_n[h]);
        for (std::size_t x = 0; x < order; ++x)
            if (classes.unite(x, g.mul(g.mul(h, x), twist))) --count;
    }
    return Integer(static_cast<unsigned long>(count));
}

Integer class_number(const FiniteGroupEndo& g) {
    unsigned long commuting = 0;
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (g.mul(a, b) == g.mul(b, a)) ++commuting;
    return Integer(commuting / g.order());
}

AbelianCharEndo::AbelianCharEndo(std::vector<Integer> invariants, IntMatrix c)
    : invariants_(std::move(invariants)), c_(std::move(c)) {
    const std::size_t s = invariants_.size();
    if (c_.rows() != s || c_.cols() != s)
        throw std::invalid_argument("abelian endomorphism: C must be " + idx(s) + "x" + idx(s));
    for (std::size_t i = 0; i < s; ++i)
        if (invariants_[i] < 1) throw std::invalid_argument("abelian endomorphism: invariants must be >= 1");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            if (!mpz_divisible_p(Integer(invariants_[j] * c_(i, j)).get_mpz_t(), invariants_[i].get_mpz_t()))
                throw std::invalid_argument("abelian endomorphism: C[" + idx(i) + "][" + idx(j) +
                                            "] is not a homomorphism entry");
            c_(i, j) = mod_floor(c_(i, j), invariants_[i]);
        }
}

Integer AbelianCharEndo::order() const {
    Integer order = 1;
    for (const auto& n : invariants_) order *= n;
    return order;
}

IntMatrix AbelianCharEndo::dual_matrix() const {
    const std::size_t s = invariants_.size();
    IntMatrix hat(s, s);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < s; ++i)
            hat(j, i) = mod_floor(c_(i, j) * invariants_[j] / invariants_[i], invariants_[j]);
    return hat;
}

Integer fixed_characters(const AbelianCharEndo& a, unsigned long n) {
    if (n == 0) throw std::invalid_argument("fixed_characters: n must be >= 1");
    const std::size_t s = a.invariants().size();
    if (s == 0) return 1;
    const IntMatrix hat = a.dual_matrix();
    IntMatrix power = IntMatrix::identity(s);
    for (unsigned long k = 0; k < n; ++k) {
        power = hat * power;
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t i = 0; i < s; ++i) power(j, i) = mod_floor(power(j, i), a.invariants()[j]);
    }
    const IntMatrix relations = IntMatrix::diagonal(a.invariants());
    const IntMatrix kernel = integer_kernel((power - IntMatrix::identity(s)).hconcat(relations));
    IntMatrix solutions(s, kernel.cols());
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < kernel.cols(); ++j) solutions(i, j) = kernel(i, j);
    const SmithForm snf = smith_normal_form(solutions.hconcat(relations));
    Integer index = 1;
    for (std::size_t i = 0; i < s; ++i) index *= snf.invariants[i];
    return a.order() / index;
}

FiniteGroupEndo to_group(const AbelianCharEndo& a) {
    const Integer order = a.order();
    if (order > 4096) throw std::invalid_argument("to_group: group order " + tz::to_string(order) + " exceeds 4096");
    const std::size_t size = order.get_ui();
    const std::size_t s = a.invariants().size();
    std::vector<unsigned long> radix(s);
    for (std::size_t i = 0; i < s; ++i) radix[i] = a.invariants()[i].get_ui();

    auto digits = [&](std::size_t x) {
        std::vector<unsigned long> d(s);
        for (std::size_t i = s; i-- > 0;) {
            d[i] = x % radix[i];
            x /= radix[i];
        }
        return d;
    };
    auto encode = [&](const std::vector<unsigned long>& d) {
        std::size_t x = 0;
        for (std::size_t i = 0; i < s; ++i) x = x * radix[i] + d[i];
        return x;
    };

    std::vector<std::vector<unsigned long>> elems(size);
    for (std::size_t x = 0; x < size; ++x) elems[x] = digits(x);
    std::vector<std::vector<std::size_t>> table(size, std::vector<std::size_t>(size));
    std::vector<unsigned long> sum(s);
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            for (std::size_t i = 0; i < s; ++i) sum[i] = (elems[x][i] + elems[y][i]) % radix[i];
            table[x][y] = encode(sum);
        }
    std::vector<std::size_t> endo(size);
    std::vector<unsigned long> image(s);
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t i = 0; i < s; ++i) {
            Integer acc = 0;
            for (std::size_t j = 0; j < s; ++j) acc += a.matrix()(i, j) * elems[x][j];
            image[i] = mod_floor(acc, a.invariants()[i]).get_ui();
        }
        endo[x] = encode(image);
    }
    return FiniteGroupEndo(FiniteGroupEndo::Trusted{}, std::move(table), 0, std::move(endo));
}

TbftReport tbft_check(const AbelianCharEndo& a, std::size_t count) {
    if (count == 0) throw std::invalid_argument("tbft_check: N must be >= 1");
    const FiniteGroupEndo g = to_group(a);
    TbftReport report;
    report.all_equal = true;
    std::vector<Integer> r_seq, rt_seq;
    for (unsigned long n = 1; n <= count; ++n) {
        TbftRow row{n, twisted_classes(g, n), fixed_characters(a, n), false};
        row.equal = row.reidemeister == row.characters;
        report.all_equal = report.all_equal && row.equal;
        r_seq.push_back(row.reidemeister);
        rt_seq.push_back(row.characters);
        report.rows.push_back(std::move(row));
    }
    report.zeta_equal = exp_zeta_series(std::span<const Integer>(r_seq)) ==
                        exp_zeta_series(std::span<const Integer>(rt_seq));
    return report;
}

FiniteGroupEndo symmetric_group_s3() { return permutation_group({{1, 0, 2}, {1, 2, 0}}); }

FiniteGroupEndo dihedral_group_d4() { return permutation_group({{1, 2, 3, 0}, {0, 3, 2, 1}}); }

FiniteGroupEndo quaternion_group_q8() {
    // element = 4 * (sign bit) + unit, units 1, i, j, k
    static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    static const std::size_t unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) {
            const std::size_t ua = a % 4, ub = b % 4;
            const bool negative = ((a / 4) ^ (b / 4) ^ (unit_sign[ua][ub] < 0 ? 1 : 0)) != 0;
            table[a][b] = (negative ? 4 : 0) + unit_prod[ua][ub];
        }
    std::vector<std::size_t> endo(8);
    std::iota(endo.begin(), endo.end(), std::size_t{0});
    return FiniteGroupEndo(std::move(table), 0, std::move(endo));
}

}  // namespace tz
