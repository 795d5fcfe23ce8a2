#include "tz/congruence.hpp"

#include <stdexcept>
#include <string>

#include "tz/errors.hpp"
#include "tz/number_theory.hpp"

namespace tz {

CongruenceReport gauss_check(std::span<const Integer> a) {
    if (a.empty()) throw std::invalid_argument("gauss_check: sequence must have at least one term");
    CongruenceReport report;
    report.all_pass = true;
    for (std::size_t n = 1; n <= a.size(); ++n) {
        CongruenceEntry e;
        e.n = n;
        e.mobius_sum = 0;
        for (std::uint64_t d : divisors(n)) {
            const int mu = mobius(d);
            if (mu != 0) e.mobius_sum += mu * a[n / d - 1];
        }
        const Integer modulus(static_cast<unsigned long>(n));
        mpz_fdiv_r(e.residue.get_mpz_t(), e.mobius_sum.get_mpz_t(), modulus.get_mpz_t());
        e.pass = e.residue == 0;
        if (e.pass) {
            e.orbit_count = Integer(e.mobius_sum / modulus);
        } else if (report.all_pass) {
            report.all_pass = false;
            report.first_failure = n;
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

OrbitCounts orbit_counts(std::span<const Integer> a) {
    const CongruenceReport report = gauss_check(a);
    if (!report.all_pass)
        throw MathError("orbit counts need the Gauss congruences, which fail at n = " +
                        std::to_string(*report.first_failure));
    OrbitCounts out;
    for (const auto& e : report.entries) {
        const bool negative = *e.orbit_count < 0;
        out.counts.push_back(*e.orbit_count);
        out.negative.push_back(negative);
        out.any_negative = out.any_negative || negative;
    }
    return out;
}

}  // namespace tz
