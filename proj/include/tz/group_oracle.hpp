#pragma once

#include <cstddef>
#include <vector>

#include "tz/int_matrix.hpp"
#include "tz/integer.hpp"

namespace tz {

/// Finite group by Cayley table (0-based) together with an endomorphism table.
class FiniteGroupEndo {
public:
    /// Checks closure, associativity, identity, inverses and e(xy) = e(x)e(y);
    /// throws std::invalid_argument naming the first violation.
    FiniteGroupEndo(std::vector<std::vector<std::size_t>> table, std::size_t identity, std::vector<std::size_t> endo);

    std::size_t order() const { return table_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    std::size_t phi(std::size_t a) const { return endo_[a]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    const std::vector<std::size_t>& endo() const { return endo_; }

    /// Table of phi^n.
    std::vector<std::size_t> endo_power(unsigned long n) const;
    FiniteGroupEndo with_endomorphism(std::vector<std::size_t> endo) const;

private:
    struct Trusted {};
    /// Same checks minus associativity, for tables built from a known group law.
    FiniteGroupEndo(Trusted, std::vector<std::vector<std::size_t>> table, std::size_t identity,
                    std::vector<std::size_t> endo);
    friend FiniteGroupEndo to_group(const class AbelianCharEndo& a);

    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> endo_;
    std::vector<std::size_t> inverse_;
};

/// Number of orbits of x -> g x phi^n(g)^-1, by union-find over all pairs.
Integer twisted_classes(const FiniteGroupEndo& g, unsigned long n);

/// Ordinary class number from Burnside's count #{(g, h) : gh = hg} / |G|.
Integer class_number(const FiniteGroupEndo& g);

/// Endomorphism of Z/n_1 + ... + Z/n_s given by C acting on columns.
class AbelianCharEndo {
public:
    /// Throws std::invalid_argument unless n_i >= 1 and n_j C[i][j] = 0 mod n_i.
    AbelianCharEndo(std::vector<Integer> invariants, IntMatrix c);

    const std::vector<Integer>& invariants() const { return invariants_; }
    const IntMatrix& matrix() const { return c_; }
    Integer order() const;
    /// Matrix of chi -> chi o phi on character coordinates: hat[j][i] = C[i][j] n_j / n_i.
    IntMatrix dual_matrix() const;

private:
    std::vector<Integer> invariants_;
    IntMatrix c_;
};

/// #{chi : chi o phi^n = chi}: the index of the relation lattice in the
/// integer solutions of (hat^n - I) chi = 0 mod n.
Integer fixed_characters(const AbelianCharEndo& a, unsigned long n);

/// Cayley table of the group with the endomorphism x -> C x.
/// Throws std::invalid_argument when the order exceeds 4096.
FiniteGroupEndo to_group(const AbelianCharEndo& a);

struct TbftRow {
    unsigned long n = 0;
    Integer reidemeister;  ///< twisted classes
    Integer characters;    ///< fixed characters
    bool equal = false;
};

struct TbftReport {
    std::vector<TbftRow> rows;
    bool all_equal = false;
    bool zeta_equal = false;  ///< exp-series of both sequences coincide
};

TbftReport tbft_check(const AbelianCharEndo& a, std::size_t count);

/// Fixture groups with the identity endomorphism.
FiniteGroupEndo symmetric_group_s3();
FiniteGroupEndo dihedral_group_d4();
FiniteGroupEndo quaternion_group_q8();

}  // namespace tz
