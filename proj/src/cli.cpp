#include "tz/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "tz/congruence.hpp"
#include "tz/errors.hpp"
#include "tz/fgab.hpp"
#include "tz/group_oracle.hpp"
#include "tz/number_theory.hpp"
#include "tz/orbit_zeta.hpp"
#include "tz/solenoid.hpp"
#include "tz/torsion.hpp"

namespace tz::cli {

namespace {

using json = nlohmann::ordered_json;

/// Input document does not match the schema of its kind.
class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Flags {
    std::optional<std::size_t> n_max;
    std::optional<std::size_t> order;
    std::optional<unsigned> depth;
    std::optional<unsigned> digits;
    std::string format = "text";
};

struct Options {
    std::size_t n_max = 12;
    std::size_t order = 24;
    unsigned depth = 2;
    unsigned digits = 30;
};

// ---- reading ----

json load_document(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw SchemaError(path + ": cannot open input document");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": not valid JSON (" + e.what() + ")");
    }
}

Integer read_integer(const json& v, const std::string& where) {
    try {
        if (v.is_number_integer()) return parse_integer(v.dump());
        if (v.is_string()) return parse_integer(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
    throw SchemaError(where + ": expected an integer (JSON integer or decimal string), got " + v.dump());
}

Rational read_rational(const json& v, const std::string& where) {
    try {
        if (v.is_number_integer()) return Rational(parse_integer(v.dump()));
        if (v.is_string()) return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
    throw SchemaError(where + ": expected a rational (integer or \"p/q\" string), got " + v.dump());
}

std::size_t read_count(const json& v, const std::string& where) {
    const Integer x = read_integer(v, where);
    if (x < 0 || x > std::numeric_limits<int>::max()) throw SchemaError(where + ": expected a non-negative count");
    return x.get_ui();
}

const json& require(const json& doc, const char* key, const std::string& kind) {
    if (!doc.is_object() || !doc.contains(key))
        throw SchemaError(kind + " document: missing field \"" + key + "\"");
    return doc.at(key);
}

std::vector<Integer> read_integers(const json& v, const std::string& where) {
    if (!v.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<Integer> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_integer(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

IntMatrix read_matrix(const json& v, const std::string& where) {
    if (!v.is_array()) throw SchemaError(where + ": expected an array of rows");
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < v.size(); ++i) rows.push_back(read_integers(v[i], where + "[" + std::to_string(i) + "]"));
    try {
        return IntMatrix::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

std::vector<std::size_t> read_indices(const json& v, const std::string& where) {
    if (!v.is_array()) throw SchemaError(where + ": expected an array of indices");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_count(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

void check_kind(const json& doc, const std::string& expected) {
    if (doc.is_object() && doc.contains("kind")) {
        const json& k = doc.at("kind");
        if (!k.is_string() || k.get<std::string>() != expected)
            throw SchemaError("document kind " + k.dump() + " does not match the subcommand (expected \"" + expected +
                              "\")");
    }
}

Options resolve_options(const json& doc, const Flags& flags) {
    Options o;
    auto take = [&](const json& src) {
        if (!src.is_object()) return;
        for (const char* key : {"N", "N_max", "n_max"})
            if (src.contains(key)) o.n_max = read_count(src.at(key), key);
        if (src.contains("order")) o.order = read_count(src.at("order"), "order");
        for (const char* key : {"J", "depth"})
            if (src.contains(key)) o.depth = static_cast<unsigned>(read_count(src.at(key), key));
        if (src.contains("digits")) o.digits = static_cast<unsigned>(read_count(src.at("digits"), "digits"));
    };
    if (doc.is_object()) {
        take(doc);
        if (doc.contains("options")) take(doc.at("options"));
    }
    if (flags.n_max) o.n_max = *flags.n_max;
    if (flags.order) o.order = *flags.order;
    if (flags.depth) o.depth = *flags.depth;
    if (flags.digits) o.digits = *flags.digits;
    if (o.n_max == 0) throw SchemaError("N_max must be >= 1");
    if (o.order == 0) throw SchemaError("series order must be >= 1");
    if (o.digits == 0 || o.digits > 10000) throw SchemaError("digits must lie in [1, 10000]");
    return o;
}

// ---- writing ----

json str(const Integer& x) { return tz::to_string(x); }
json str(const Rational& x) { return tz::to_string(x); }

json strings(const std::vector<Integer>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(str(x));
    return out;
}

json strings(const std::vector<Rational>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(str(x));
    return out;
}

json rational_function_json(const RationalFunctionQ& f) {
    return json{{"text", f.to_string()},
                {"numerator", strings(f.numerator_coefficients())},
                {"denominator", strings(f.denominator_coefficients())}};
}

json series_json(const TruncatedSeriesQ& s) { return strings(s.coefficients()); }

json formal_product_json(const FormalProduct& p) {
    json out = json::array();
    for (const auto& f : p.factors) out.push_back(json{{"d", f.d}, {"exponent", str(f.exponent)}});
    return out;
}

json congruence_json(const std::vector<Integer>& a) {
    const CongruenceReport r = gauss_check(a);
    json entries = json::array();
    for (const auto& e : r.entries) {
        json row{{"n", e.n}, {"mobius_sum", str(e.mobius_sum)}, {"residue", str(e.residue)}};
        row["orbit_count"] = e.orbit_count ? str(*e.orbit_count) : json(nullptr);
        row["pass"] = e.pass;
        entries.push_back(std::move(row));
    }
    json out{{"verdict", r.all_pass ? "PASS" : "FAIL"}};
    out["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
    if (r.all_pass) {
        const OrbitCounts o = orbit_counts(a);
        out["orbit_counts"] = strings(o.counts);
        out["negative_orbit_counts"] = o.any_negative;
    }
    out["entries"] = std::move(entries);
    return out;
}

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

bool flat_object(const json& v) {
    if (!v.is_object()) return false;
    for (const auto& [k, x] : v.items())
        if (!is_scalar(x)) return false;
    return true;
}

void render_text(const json& v, std::ostream& out, int indent);

void render_entry(const std::string& key, const json& v, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_scalar(v)) {
        out << pad << key << ": " << scalar_text(v) << "\n";
    } else if (v.is_array() && v.empty()) {
        out << pad << key << ": (none)\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
        out << pad << key << ":";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : " ") << scalar_text(v[i]);
        out << "\n";
    } else if (v.is_array()) {
        out << pad << key << ":\n";
        for (const auto& item : v) {
            if (flat_object(item)) {
                out << pad << "  -";
                bool first = true;
                for (const auto& [k, x] : item.items()) {
                    out << (first ? " " : ", ") << k << " " << scalar_text(x);
                    first = false;
                }
                out << "\n";
            } else if (is_scalar(item)) {
                out << pad << "  - " << scalar_text(item) << "\n";
            } else {
                out << pad << "  -\n";
                render_text(item, out, indent + 4);
            }
        }
    } else {
        out << pad << key << ":\n";
        render_text(v, out, indent + 2);
    }
}

void render_text(const json& v, std::ostream& out, int indent) {
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) render_entry(k, x, out, indent);
    } else if (v.is_array()) {
        render_entry("items", v, out, indent);
    } else {
        out << std::string(static_cast<std::size_t>(indent), ' ') << scalar_text(v) << "\n";
    }
}

// ---- analyses ----

FgAbEndo read_fgab(const json& doc) {
    const std::size_t rank = doc.contains("rank") ? read_count(doc.at("rank"), "rank") : 0;
    const std::vector<Integer> torsion =
        doc.contains("torsion") ? read_integers(doc.at("torsion"), "torsion") : std::vector<Integer>{};
    const std::size_t s = torsion.size();
    if (!doc.contains("rank") && !doc.contains("torsion"))
        throw SchemaError("fgab document: needs \"rank\" and/or \"torsion\"");
    IntMatrix a = doc.contains("A") ? read_matrix(doc.at("A"), "A") : IntMatrix(rank, rank);
    IntMatrix b = doc.contains("B") ? read_matrix(doc.at("B"), "B") : IntMatrix(s, rank);
    IntMatrix c = doc.contains("C") ? read_matrix(doc.at("C"), "C") : IntMatrix(s, s);
    if (rank > 0 && !doc.contains("A")) throw SchemaError("fgab document: missing field \"A\" for rank " + std::to_string(rank));
    if (s > 0 && !doc.contains("C")) throw SchemaError("fgab document: missing field \"C\" for the torsion part");
    try {
        return FgAbEndo(FgAbGroup{rank, torsion}, a, b, c);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("fgab document: ") + e.what());
    }
}

json sequence_json(const ReidemeisterSequence& seq) {
    json out = json::array();
    for (const auto& v : seq.values) out.push_back(v.to_string());
    return out;
}

json analyze_fgab(const json& doc, const Options& o) {
    check_kind(doc, "fgab");
    const FgAbEndo e = read_fgab(doc);
    json report{{"kind", "fgab"}, {"group", e.group().to_string()}};
    report["options"] = json{{"N_max", o.n_max}, {"order", o.order}, {"digits", o.digits}};
    const ReidemeisterSequence seq = reidemeister_sequence(e, o.n_max);
    report["sequence"] = sequence_json(seq);

    const ZetaForm z = reidemeister_zeta(e, o.order);
    json zeta{{"route", to_string(z.route)}};
    zeta["closed_form"] = z.closed_form ? rational_function_json(*z.closed_form) : json(nullptr);
    if (z.signs) zeta["signs"] = json{{"sigma", z.signs->sigma}, {"r", z.signs->r}, {"p", z.signs->p}};
    if (z.product) {
        json factors = json::array();
        for (const auto& f : z.product->factors)
            factors.push_back(json{{"root", str(f.root)}, {"exponent", str(f.exponent)}});
        zeta["product"] = std::move(factors);
    }
    if (z.certificate)
        zeta["recurrence"] = json{{"coefficients", strings(z.certificate->coefficients)},
                                  {"seed", strings(z.certificate->seed)}};
    zeta["series"] = series_json(z.series);
    report["zeta"] = std::move(zeta);

    json fe;
    if (e.group().torsion_count() == 0 && e.rank() > 0) {
        const Integer d = determinant(e.free_part());
        if (d == 0) {
            fe = json{{"status", "not applicable"}, {"reason", "degree d = det(A) is 0"}};
        } else {
            const auto check = verify_functional_equation(*z.closed_form, d, e.rank(), z.signs->r);
            fe = json{{"form", "R(1/(d z)) = R(z)^((-1)^m) eps^((-1)^r)"},
                      {"d", str(d)},
                      {"m", e.rank()},
                      {"r", z.signs->r},
                      {"status", check.holds ? "holds" : "FAIL"}};
            fe["epsilon"] = check.holds ? str(check.epsilon) : json(nullptr);
            if (!check.holds) throw std::logic_error("functional equation failed for a Lefschetz closed form");
        }
    } else if (e.rank() == 0 && e.group().torsion_order() <= (1UL << 20)) {
        const OrbitZeta oz = zeta_from_orbits(dual_character_map(e));
        fe = json{{"form", "Z(1/z) = (-1)^a z^b Z(z)"},
                  {"a", oz.a},
                  {"b", oz.b},
                  {"status", oz.functional_equation ? "holds" : "FAIL"}};
    } else {
        fe = json{{"status", "not verified"},
                  {"reason", "no degree formula for groups with both free and torsion parts"}};
    }
    report["functional_equation"] = std::move(fe);

    if (e.group().torsion_count() == 0 && e.rank() > 0) {
        std::vector<Rational> angles{Rational(1, 2), Rational(1, 4)};
        if (doc.contains("tau_angles")) {
            angles.clear();
            const json& list = doc.at("tau_angles");
            if (!list.is_array()) throw SchemaError("tau_angles: expected an array");
            for (std::size_t i = 0; i < list.size(); ++i)
                angles.push_back(read_rational(list[i], "tau_angles[" + std::to_string(i) + "]"));
        }
        const RationalFunctionQ l = lefschetz_zeta(e.free_part());
        json taus = json::array();
        for (const auto& angle : angles) {
            const TorsionValue t = torsion_tau(l, angle, o.digits);
            json row{{"angle", str(angle)}, {"kind", to_string(t.kind)}};
            row["tau"] = t.kind == TorsionValue::Kind::value ? json(t.decimal) : json(nullptr);
            taus.push_back(std::move(row));
        }
        report["torsion"] = json{{"L", rational_function_json(l)}, {"values", std::move(taus)}};
    }

    const Reduction image = eventual_image(e);
    const Reduction quotient = nilpotent_radical_quotient(e);
    const bool image_ok = reidemeister_sequence(image.endo, o.n_max).values == seq.values;
    const bool quotient_ok = reidemeister_sequence(quotient.endo, o.n_max).values == seq.values;
    if (!image_ok || !quotient_ok) throw std::logic_error("reduction changed the Reidemeister sequence");
    report["reductions"] = json{
        {"eventual_image", json{{"group", image.endo.group().to_string()}, {"steps", image.steps}, {"sequence_preserved", image_ok}}},
        {"nilpotent_quotient",
         json{{"group", quotient.endo.group().to_string()}, {"steps", quotient.steps}, {"sequence_preserved", quotient_ok}}}};

    report["congruence"] = congruence_json(seq.finite_values());
    return report;
}

json analyze_solenoid(const json& doc, const Options& o) {
    check_kind(doc, "solenoid");
    const std::string kind = "solenoid";
    std::vector<Integer> primes;
    for (const char* key : {"S0", "primes"})
        if (doc.is_object() && doc.contains(key)) primes = read_integers(doc.at(key), key);
    const Rational xi = read_rational(require(doc, "xi", kind), "xi");
    std::optional<SolenoidSpec> parsed;
    try {
        parsed.emplace(primes, xi);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("solenoid document: ") + e.what());
    }
    const SolenoidSpec& s = *parsed;

    json report{{"kind", "solenoid"}, {"S0", strings(s.primes())}, {"xi", str(s.xi())}};
    report["options"] = json{{"N_max", o.n_max}, {"order", o.order}, {"depth", o.depth}};
    const auto f = periodic_counts(s, o.n_max);
    report["sequence"] = strings(f);

    const DichotomyVerdict v = classify(s);
    json verdict{{"tag", to_string(v.tag)}, {"witnesses", strings(v.witnesses)}, {"radius", str(v.radius)}};
    if (v.tag == DichotomyVerdict::Tag::natural_boundary) {
        verdict["basis"] = "boundary by Theorem criterion (|xi|_p = 1 for a witness p in S0)";
        verdict["no_short_recurrence"] = v.no_short_recurrence;
        verdict["recurrence_probe"] = "Berlekamp-Massey on F(1..40), orders <= 12; heuristic, not a proof";
    } else {
        verdict["closed_form"] = rational_function_json(v.closed_form->zeta);
        json factors = json::array();
        for (const auto& fac : v.closed_form->product.factors)
            factors.push_back(json{{"root", str(fac.root)}, {"exponent", str(fac.exponent)}});
        verdict["product"] = std::move(factors);
        verdict["window"] = v.closed_form->window;
        Rational growth = 0;
        for (const auto& fac : v.closed_form->product.factors) growth = std::max(growth, Rational(abs(fac.root)));
        verdict["growth"] = str(growth);
    }
    report["verdict"] = std::move(verdict);

    if (v.tag == DichotomyVerdict::Tag::natural_boundary) {
        try {
            const BoundaryExpansion ex = boundary_expansion(s, o.depth, o.order);
            json factors = json::array();
            for (const auto& fac : ex.factors) {
                json row = rational_function_json(fac.base);
                row["exponent"] = str(fac.exponent);
                factors.push_back(std::move(row));
            }
            std::size_t tail = 0;
            for (std::size_t k = 1; k <= ex.residual.order() && tail == 0; ++k)
                if (ex.residual[k] != 0) tail = k;
            report["expansion"] = json{{"prime", str(ex.prime)},
                                       {"d", ex.order_d},
                                       {"e", ex.lift_e},
                                       {"depth", ex.depth},
                                       {"exact_order", ex.exact_order},
                                       {"factors", std::move(factors)},
                                       {"residual", series_json(ex.residual)}};
            report["expansion"]["first_residual_term"] = tail == 0 ? json(nullptr) : json(tail);
        } catch (const MathError& e) {
            report["expansion"] = json{{"declined", e.what()}};
        }
    }

    report["zeta"] = json{{"series", series_json(zeta_series(s, o.order))}};
    report["congruence"] = congruence_json(f);
    return report;
}

json analyze_group(const json& doc, const Options& o) {
    check_kind(doc, "group");
    const std::string kind = "group";
    json report{{"kind", "group"}};
    std::optional<AbelianCharEndo> abelian;
    std::optional<FiniteGroupEndo> group;
    try {
        if (doc.is_object() && doc.contains("invariants")) {
            const auto inv = read_integers(doc.at("invariants"), "invariants");
            IntMatrix c = doc.contains("C") ? read_matrix(doc.at("C"), "C") : IntMatrix::identity(inv.size());
            abelian.emplace(inv, c);
            group.emplace(to_group(*abelian));
        } else {
            const json& t = require(doc, "table", kind);
            if (!t.is_array()) throw SchemaError("table: expected an array of rows");
            std::vector<std::vector<std::size_t>> table;
            for (std::size_t i = 0; i < t.size(); ++i) table.push_back(read_indices(t[i], "table[" + std::to_string(i) + "]"));
            const std::size_t identity = doc.contains("identity") ? read_count(doc.at("identity"), "identity") : 0;
            std::vector<std::size_t> endo;
            if (doc.contains("endo")) {
                endo = read_indices(doc.at("endo"), "endo");
            } else {
                for (std::size_t i = 0; i < table.size(); ++i) endo.push_back(i);
            }
            group.emplace(std::move(table), identity, std::move(endo));
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("group document: ") + e.what());
    }

    report["order"] = group->order();
    report["class_number"] = str(class_number(*group));
    report["options"] = json{{"N_max", o.n_max}, {"order", o.order}};
    std::vector<Integer> r;
    const std::size_t count = std::max(o.n_max, o.order);
    for (unsigned long n = 1; n <= count; ++n) r.push_back(twisted_classes(*group, n));
    report["sequence"] = strings(std::vector<Integer>(r.begin(), r.begin() + static_cast<long>(o.n_max)));
    if (abelian) {
        const TbftReport t = tbft_check(*abelian, o.n_max);
        json rows = json::array();
        for (const auto& row : t.rows)
            rows.push_back(json{{"n", row.n}, {"R", str(row.reidemeister)}, {"RT", str(row.characters)}, {"equal", row.equal}});
        report["tbft"] = json{{"all_equal", t.all_equal}, {"zeta_equal", t.zeta_equal}, {"rows", std::move(rows)}};
        if (!t.all_equal) throw std::logic_error("twisted classes and fixed characters disagree on an abelian group");
        const OrbitZeta oz = zeta_from_orbits(dual_character_map(FgAbEndo::finite(abelian->invariants(), abelian->matrix())));
        report["closed_form"] = rational_function_json(oz.zeta);
        report["functional_equation"] = json{{"form", "Z(1/z) = (-1)^a z^b Z(z)"},
                                             {"a", oz.a},
                                             {"b", oz.b},
                                             {"status", oz.functional_equation ? "holds" : "FAIL"}};
    }
    const TruncatedSeriesQ series = exp_zeta_series(std::span<const Integer>(r.data(), o.order));
    if (report.contains("closed_form") &&
        series_of_rational(zeta_from_orbits(dual_character_map(FgAbEndo::finite(abelian->invariants(), abelian->matrix()))).zeta,
                           o.order) != series)
        throw std::logic_error("character-orbit zeta disagrees with the twisted-class series");
    report["zeta"] = json{{"series", series_json(series)}};
    report["congruence"] = congruence_json(std::vector<Integer>(r.begin(), r.begin() + static_cast<long>(o.n_max)));
    return report;
}

json analyze_periodic(const json& doc, const Options& o) {
    const std::uint64_t m = read_count(require(doc, "period", "periodic"), "period");
    if (m == 0) throw SchemaError("period must be >= 1");
    const json& vals = require(doc, "values", "periodic");
    std::map<std::uint64_t, Integer> values;
    if (vals.is_object()) {
        for (const auto& [k, v] : vals.items()) {
            Integer d;
            try {
                d = parse_integer(k);
            } catch (const std::invalid_argument&) {
                throw SchemaError("values: key \"" + k + "\" is not a divisor");
            }
            if (d < 1) throw SchemaError("values: key \"" + k + "\" is not a positive divisor");
            values[d.get_ui()] = read_integer(v, "values[" + k + "]");
        }
    } else {
        throw SchemaError("values: expected an object mapping divisors to Z(phi^d)");
    }
    PeriodicProduct p;
    try {
        p = periodic_product_formula(m, values);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("periodic document: ") + e.what());
    }
    json report{{"kind", "periodic"}, {"period", m}};
    json primitive = json::array();
    for (const auto& [d, v] : p.primitive) primitive.push_back(json{{"d", d}, {"P", str(v)}});
    report["primitive"] = std::move(primitive);
    report["product"] = formal_product_json(p.product);
    report["warnings"] = p.warnings;
    const auto seq = periodic_extension(m, values, std::max(o.n_max, o.order));
    report["sequence"] = strings(std::vector<Integer>(seq.begin(), seq.begin() + static_cast<long>(o.n_max)));
    const TruncatedSeriesQ exact = exp_zeta_series(std::span<const Integer>(seq.data(), o.order));
    const bool agrees = p.product.series(o.order) == exact;
    if (!agrees) throw std::logic_error("periodic product series disagrees with the exp-series");
    report["zeta"] = json{{"series", series_json(exact)}, {"product_series_agrees", agrees}};
    if (is_prime(Integer(static_cast<unsigned long>(m)))) {
        const FormalProduct c = prime_period_form(m, values.at(1), values.at(m));
        report["prime_period_form"] =
            json{{"factors", formal_product_json(c)}, {"agrees", c.series(o.order) == exact}};
    }
    report["congruence"] = congruence_json(std::vector<Integer>(seq.begin(), seq.begin() + static_cast<long>(o.n_max)));
    return report;
}

json analyze_map(const json& doc, const Options& o) {
    if (doc.is_object() && doc.contains("period")) {
        check_kind(doc, "periodic");
        return analyze_periodic(doc, o);
    }
    check_kind(doc, "map");
    const json& t = doc.is_array() ? doc : require(doc, "map", "map");
    std::optional<FiniteMap> f;
    try {
        f.emplace(read_indices(t, "map"));
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("map document: ") + e.what());
    }
    const OrbitDecomposition orbits = orbit_decomposition(*f);
    json report{{"kind", "map"}, {"size", f->size()}};
    json lengths = json::array();
    for (std::size_t len : orbits.cycle_lengths) lengths.push_back(len);
    report["orbits"] = json{{"cycle_lengths", std::move(lengths)}, {"transient", orbits.transient}};
    std::vector<Integer> counts;
    for (unsigned long n = 1; n <= std::max(o.n_max, o.order); ++n) counts.push_back(fixed_count(orbits, n));
    report["sequence"] = strings(std::vector<Integer>(counts.begin(), counts.begin() + static_cast<long>(o.n_max)));
    const OrbitZeta z = zeta_from_orbits(orbits);
    const TruncatedSeriesQ series = exp_zeta_series(std::span<const Integer>(counts.data(), o.order));
    if (series_of_rational(z.zeta, o.order) != series) throw std::logic_error("orbit zeta disagrees with the series");
    report["zeta"] = json{{"closed_form", rational_function_json(z.zeta)}, {"series", series_json(series)}};
    report["functional_equation"] = json{{"form", "Z(1/z) = (-1)^a z^b Z(z)"},
                                         {"a", z.a},
                                         {"b", z.b},
                                         {"status", z.functional_equation ? "holds" : "FAIL"}};
    report["congruence"] = congruence_json(std::vector<Integer>(counts.begin(), counts.begin() + static_cast<long>(o.n_max)));
    return report;
}

json check_congruence(const json& doc, const Options&) {
    if (doc.is_object()) check_kind(doc, "sequence");
    const json* seq = doc.is_object() ? &require(doc, "sequence", "sequence") : &doc;
    const auto a = read_integers(*seq, "sequence");
    if (a.empty()) throw SchemaError("sequence: needs at least one term");
    json report{{"kind", "congruence"}, {"sequence", strings(a)}};
    report["congruence"] = congruence_json(a);
    return report;
}

using Analysis = json (*)(const json&, const Options&);

int execute(Analysis analysis, const std::string& file, const Flags& flags, std::ostream& out, std::ostream& err) {
    try {
        const json doc = load_document(file);
        const Options options = resolve_options(doc, flags);
        const json report = analysis(doc, options);
        if (flags.format == "json") {
            out << report.dump(2) << "\n";
        } else {
            render_text(report, out, 0);
        }
        return ok;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return schema_error;
    } catch (const BitLimitExceeded& e) {
        err << "bit limit exceeded: " << e.what() << "\n";
        return bit_limit;
    } catch (const MathError& e) {
        err << "mathematical precondition violated: " << e.what() << "\n";
        return math_error;
    } catch (const std::invalid_argument& e) {
        err << "schema error: " << e.what() << "\n";
        return schema_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }
}

}  // namespace

bool configure_bit_limit_from_env(std::ostream& err) {
    const char* raw = std::getenv("TWISTED_ZETA_MAX_BITS");
    if (raw == nullptr || *raw == '\0') {
        set_bit_limit(0);
        return true;
    }
    try {
        const Integer bits = parse_integer(raw);
        if (bits < 0 || !bits.fits_ulong_p()) throw std::invalid_argument("out of range");
        set_bit_limit(bits.get_ui());
        return true;
    } catch (const std::invalid_argument&) {
        err << "schema error: TWISTED_ZETA_MAX_BITS must be a non-negative integer, got \"" << raw << "\"\n";
        return false;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reidemeister zeta functions of group endomorphisms, computed exactly", "twisted-zeta"};
    app.require_subcommand(1);
    Flags flags;
    std::string file;

    struct Command {
        const char* name;
        const char* help;
        Analysis analysis;
    };
    const Command commands[] = {
        {"analyze-fgab", "endomorphism of a finitely generated abelian group", analyze_fgab},
        {"analyze-solenoid", "multiplication by xi on Z[1/S0]", analyze_solenoid},
        {"analyze-group", "finite group with an endomorphism (Cayley table or abelian invariants)", analyze_group},
        {"analyze-map", "finite self-map, or a periodic sequence of fixed-point counts", analyze_map},
        {"check-congruence", "Gauss congruences of an integer sequence", check_congruence},
    };
    std::vector<std::pair<CLI::App*, Analysis>> subs;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("FILE", file, "input JSON document, - for stdin")->required();
        sub->add_option("--n-max", flags.n_max, "number of sequence terms N_max (default 12)");
        sub->add_option("--order", flags.order, "zeta series order (default 24)");
        sub->add_option("--depth", flags.depth, "boundary expansion depth J (default 2)");
        sub->add_option("--format", flags.format, "report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--digits", flags.digits, "decimal places for torsion values (default 30)");
        subs.emplace_back(sub, c.analysis);
    }

    std::vector<const char*> argv{"twisted-zeta"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return schema_error;
    }
    for (const auto& [sub, analysis] : subs)
        if (sub->parsed()) return execute(analysis, file, flags, out, err);
    return schema_error;
}

}  // namespace tz::cli
