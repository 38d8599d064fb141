#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chm/character_table.hpp"
#include "chm/characters.hpp"
#include "chm/errors.hpp"
#include "chm/filtration.hpp"
#include "chm/fock.hpp"
#include "chm/forms.hpp"
#include "chm/generators.hpp"
#include "chm/products.hpp"
#include "chm/qyseries.hpp"
#include "chm/twining.hpp"
#include "chm/vertex.hpp"

namespace {

using namespace chm;
using nlohmann::json;

struct RunConfig {
    long prec = 6;
    std::string data;
    std::string format = "text";
    unsigned long seed = 20260815u;
    int dim = 2;
    long max_weight = 3;
};

std::string data_dir(const RunConfig& cfg) {
    if (!cfg.data.empty()) return cfg.data;
    if (const char* env = std::getenv("CHM_DATA_DIR")) return env;
    return "./data";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// ---------------------------------------------------------------- series IO

void emit_series(const QYSeries& s, const std::string& format) {
    if (format == "text") {
        std::cout << s.text();
    } else if (format == "csv") {
        std::cout << "q24,y2,coeff\n";
        for (const auto& [k, v] : s.co)
            std::cout << k.first << "," << k.second << "," << rat_str(v) << "\n";
    } else {
        json terms = json::array();
        for (const auto& [k, v] : s.co)
            terms.push_back({{"q24", k.first}, {"y2", k.second},
                             {"coeff", rat_str(v)}});
        json out = {{"prec24", s.prec24}, {"terms", terms}};
        std::cout << out.dump(2) << "\n";
    }
}

void emit_decomposition(const Decomposition& d, const std::string& format) {
    if (format == "text") {
        std::cout << "c_half " << rat_str(d.c_half) << "\n";
        std::cout << "c_zero " << rat_str(d.c_zero) << "\n";
        std::cout << "massive";
        for (const auto& m : d.massive) std::cout << " " << rat_str(m);
        std::cout << "\n";
    } else if (format == "csv") {
        std::cout << "field,value\n";
        std::cout << "c_half," << rat_str(d.c_half) << "\n";
        std::cout << "c_zero," << rat_str(d.c_zero) << "\n";
        for (std::size_t n = 0; n < d.massive.size(); ++n)
            std::cout << "massive_" << (n + 1) << "," << rat_str(d.massive[n])
                      << "\n";
    } else {
        json ms = json::array();
        for (const auto& m : d.massive) ms.push_back(rat_str(m));
        json out = {{"c_half", rat_str(d.c_half)},
                    {"c_zero", rat_str(d.c_zero)},
                    {"massive", ms}};
        std::cout << out.dump(2) << "\n";
    }
}

// ------------------------------------------------------------- verification

struct CaseResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;
    bool pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
};

void emit_suite_text(const SuiteResult& r) {
    for (const auto& c : r.cases) {
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << r.suite << "."
                  << c.name;
        if (!c.detail.empty()) std::cout << "  " << c.detail;
        std::cout << "\n";
    }
    std::cout << "suite " << r.suite << ": " << (r.pass() ? "pass" : "FAIL")
              << "\n";
}

void emit_suite_csv(const SuiteResult& r) {
    for (const auto& c : r.cases)
        std::cout << r.suite << "," << csv_field(c.name) << ","
                  << (c.pass ? "pass" : "FAIL") << "," << csv_field(c.detail)
                  << "\n";
}

json suite_json(const SuiteResult& r) {
    json cases = json::array();
    for (const auto& c : r.cases)
        cases.push_back(
            {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"suite", r.suite}, {"pass", r.pass()}, {"cases", cases}};
}

QYSeries random_series(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 6), q(0, 20), y(-4, 4),
        c(-9, 9);
    std::map<QYSeries::Key, Rat> co;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) co[{q(rng), y(rng)}] = c(rng);
    return QYSeries(std::move(co), 36);
}

bool series_agree(const QYSeries& a, const QYSeries& b) {
    long p = std::min(a.prec24, b.prec24);
    return a.clip(p).co == b.clip(p).co;
}

SuiteResult run_ring(const RunConfig& cfg) {
    SuiteResult r{"ring", {}};
    std::mt19937_64 rng(cfg.seed);
    long assoc = 0, comm = 0, dist = 0, inv = 0;
    bool ok_assoc = true, ok_comm = true, ok_dist = true, ok_inv = true;
    for (int it = 0; it < 100; ++it) {
        QYSeries a = random_series(rng), b = random_series(rng),
                 c = random_series(rng);
        ok_assoc = ok_assoc && series_agree((a * b) * c, a * (b * c)) &&
                   series_agree((a + b) + c, a + (b + c));
        ok_comm = ok_comm && series_agree(a * b, b * a) &&
                  series_agree(a + b, b + a);
        ok_dist = ok_dist && series_agree(a * (b + c), a * b + a * c);
        ++assoc, ++comm, ++dist;
    }
    for (int it = 0; it < 50; ++it) {
        QYSeries s = QYSeries::one(36) + random_series(rng).shift(1, 0);
        ok_inv = ok_inv &&
                 series_agree(s * s.invert(), QYSeries::one(36));
        ++inv;
    }
    r.cases.push_back({"associativity", ok_assoc, std::to_string(assoc) + " random triples"});
    r.cases.push_back({"commutativity", ok_comm, std::to_string(comm) + " random pairs"});
    r.cases.push_back({"distributivity", ok_dist, std::to_string(dist) + " random triples"});
    r.cases.push_back({"invert_roundtrip", ok_inv, std::to_string(inv) + " random units"});
    return r;
}

QYSeries q_only(const std::map<long, Rat>& m, long prec24) {
    std::map<QYSeries::Key, Rat> co;
    for (const auto& [k, v] : m) co[{k, 0}] = v;
    return QYSeries(std::move(co), prec24);
}

SuiteResult run_triple_product(const RunConfig& cfg) {
    SuiteResult r{"triple-product", {}};
    long p = 24 * std::max<long>(cfg.prec, 2);
    r.cases.push_back({"theta1_product_vs_sum",
                       series_agree(theta_prod(p), theta_sum(p)),
                       "window q^" + std::to_string(p) + "/24"});
    r.cases.push_back({"eta_product_vs_pentagonal",
                       series_agree(eta(p), eta_pentagonal(p)),
                       "window q^" + std::to_string(p) + "/24"});
    QYSeries prod = QYSeries::one(p);
    for (auto th : {theta2, theta3, theta4})
        prod = prod * q_only(th(p).specialize_y(1), p);
    r.cases.push_back({"theta234_equals_2eta3",
                       series_agree(prod, eta_pow(p, 3).scale(2)), ""});
    return r;
}

SuiteResult run_opes(const RunConfig& cfg) {
    SuiteResult r{"opes", {}};
    if (cfg.dim < 1 || cfg.dim > 3)
        throw std::invalid_argument("opes supports --dim 1..3");
    const int N = cfg.dim;
    GeneratorSet g = standard_generators(N, false);
    VAState vac = vacuum_state(N, false);
    auto eq = [&](const std::string& name, const VAState& got,
                  const VAState& want) {
        r.cases.push_back({name, got == want, ""});
    };
    eq("Q_(0)Q = 0", nth_product(g.Q, 0, g.Q), VAState(N, false));
    eq("G_(0)G = 0", nth_product(g.G, 0, g.G), VAState(N, false));
    eq("Q_(2)G = N", nth_product(g.Q, 2, g.G), vac.scale(N));
    eq("Q_(1)G = J", nth_product(g.Q, 1, g.G), g.J);
    eq("Q_(0)G = L", nth_product(g.Q, 0, g.G), g.L);
    eq("G_(0)Q = L - TJ", nth_product(g.G, 0, g.Q), g.L - translate(g.J));
    eq("L_(3)L = 0", nth_product(g.L, 3, g.L), VAState(N, false));
    eq("L_(2)L = 0", nth_product(g.L, 2, g.L), VAState(N, false));
    eq("L_(1)L = 2L", nth_product(g.L, 1, g.L), g.L.scale(2));
    eq("L_(0)L = TL", nth_product(g.L, 0, g.L), translate(g.L));
    eq("J_(1)J = N", nth_product(g.J, 1, g.J), vac.scale(N));
    eq("L_(2)J = -N", nth_product(g.L, 2, g.J), vac.scale(-N));
    eq("J_(0)Q = Q", nth_product(g.J, 0, g.Q), g.Q);
    eq("J_(0)G = -G", nth_product(g.J, 0, g.G), g.G.scale(-1));
    eq("J_(0)E = N E", nth_product(g.J, 0, g.E), g.E.scale(N));
    eq("J_(0)D = -N D", nth_product(g.J, 0, g.D), g.D.scale(-N));
    for (const auto& [name, s] : g.list()) {
        long w = detail::state_max_weight(*s);
        eq("L_(1)" + name + " = weight * " + name, nth_product(g.L, 1, *s),
           s->scale(w));
        eq("L_(0)" + name + " = T" + name, nth_product(g.L, 0, *s),
           translate(*s));
    }
    return r;
}

SuiteResult run_closure(const RunConfig& cfg) {
    SuiteResult r{"closure", {}};
    if (cfg.dim < 1 || cfg.dim > 3)
        throw std::invalid_argument("closure supports --dim 1..3");
    if (cfg.dim == 2) {
        for (bool gr : {false, true}) {
            GeneratorSet g = gr ? gr_generators(2, true)
                                : standard_generators(2, true);
            BracketTable t = lambda_bracket_table(g, 3);
            r.cases.push_back(
                {gr ? "flat_octet_gr" : "flat_octet", t.all_closed,
                 std::to_string(t.entries.size()) + " products"});
        }
    } else {
        GeneratorSet g = standard_generators(cfg.dim, false);
        BracketTable t = lambda_bracket_table(g, 3);
        bool core = true;
        long n = 0;
        auto is_core = [](const std::string& s) {
            return s == "Q" || s == "L" || s == "J" || s == "G";
        };
        for (const auto& e : t.entries)
            if (is_core(e.a) && is_core(e.b)) {
                core = core && e.in_span;
                ++n;
            }
        r.cases.push_back({"superconformal_quartet", core,
                           std::to_string(n) + " products"});
    }
    return r;
}

SuiteResult run_filtration(const RunConfig& cfg) {
    SuiteResult r{"filtration", {}};
    FiltrationReport rep = check_filtration(1000, cfg.seed);
    std::string wit = rep.witnesses.empty() ? "" : rep.witnesses.front();
    r.cases.push_back({"product_degree_bound", rep.violations == 0,
                       std::to_string(rep.product_checks) + " checks"});
    r.cases.push_back({"polynomial_degree_bound", rep.violations == 0,
                       std::to_string(rep.polynomial_checks) + " checks"});
    r.cases.push_back({"weight_degree_bound", rep.violations == 0,
                       std::to_string(rep.bound_checks) + " checks"});
    r.cases.push_back({"violations", rep.pass(),
                       rep.pass() ? std::to_string(rep.pairs) + " pairs"
                                  : wit});
    return r;
}

SuiteResult run_gr(const RunConfig& cfg) {
    SuiteResult r{"gr", {}};
    auto basis = gr_basis(cfg.dim, cfg.max_weight);
    bool zero = true, round = true;
    for (const auto& m : basis) {
        VAState s = build_state(cfg.dim, true, m);
        for (int i = 1; i <= cfg.dim && zero; ++i)
            zero = zero && apply_mode({Kind::Beta, i, 0}, s).is_zero() &&
                   apply_mode({Kind::Gamma, i, 0}, s).is_zero();
        round = round && gr_project(to_chiral(s)) == s;
    }
    r.cases.push_back({"zero_modes_annihilate", zero,
                       std::to_string(basis.size()) + " basis states"});
    r.cases.push_back({"symbol_map_round_trip", round,
                       std::to_string(basis.size()) + " basis states"});
    GeneratorSet g = gr_generators(cfg.dim, cfg.dim == 2);
    bool inter = true;
    long prods = 0;
    for (const auto& [na, sa] : g.list())
        for (const auto& [nb, sb] : g.list()) {
            long top = detail::state_max_weight(*sa) +
                       detail::state_max_weight(*sb);
            for (long n = -2; n <= top + 1; ++n) {
                inter = inter && to_chiral(nth_product(*sa, n, *sb)) ==
                                     nth_product(to_chiral(*sa), n,
                                                 to_chiral(*sb));
                ++prods;
            }
        }
    r.cases.push_back({"symbol_map_intertwines_products", inter,
                       std::to_string(prods) + " products"});
    return r;
}

SuiteResult run_adjoint(const RunConfig& cfg) {
    SuiteResult r{"adjoint", {}};
    if (cfg.dim != 2)
        throw std::invalid_argument("the flat metric model needs --dim 2");
    AdjointnessReport rep = check_adjointness(cfg.max_weight);
    for (const auto& e : rep.entries) {
        std::string detail = std::to_string(e.cases) + " cases";
        if (e.measured_sign != 0)
            detail += std::string(", sign ") +
                      (e.measured_sign > 0 ? "+1" : "-1");
        if (!e.witness.empty()) detail += ", " + e.witness;
        r.cases.push_back({e.relation, e.pass, detail});
    }
    return r;
}

QYSeries fock_product_formula(int N, long k_max) {
    const long P = 24 * (k_max + 1);
    QYSeries v = QYSeries::one(P);
    for (long n = 1; n <= k_max + 1; ++n) {
        QYSeries boson =
            (QYSeries::one(P) - QYSeries::mono(1, 24 * n, 0, P)).invert();
        QYSeries bfac = QYSeries::one(P) + QYSeries::mono(1, 24 * n, -2, P);
        QYSeries cfac =
            QYSeries::one(P) + QYSeries::mono(1, 24 * (n - 1), 2, P);
        for (int t = 0; t < N; ++t) v = v * boson * boson * bfac * cfac;
    }
    return v;
}

SuiteResult run_bridge(const RunConfig& cfg) {
    SuiteResult r{"bridge", {}};
    if (cfg.dim < 1 || cfg.dim > 3)
        throw std::invalid_argument("bridge supports --dim 1..3");
    auto dims = graded_dimension(cfg.dim, 4);
    QYSeries v = fock_product_formula(cfg.dim, 4);
    for (long k = 0; k <= 4; ++k) {
        std::map<long, Rat> want;
        for (const auto& [key, d] : dims)
            if (key.first == k) want[2 * key.second] = Rat(d);
        r.cases.push_back({"graded_dimension_weight_" + std::to_string(k),
                           v.q_coeff(24 * k) == want,
                           std::to_string(want.size()) + " fermion channels"});
    }
    GeneratorSet grg = gr_generators(cfg.dim, cfg.dim == 2);
    GeneratorSet chg = standard_generators(cfg.dim, cfg.dim == 2);
    auto gl = grg.list();
    auto cl = chg.list();
    bool carry = gl.size() == cl.size();
    for (std::size_t i = 0; carry && i < gl.size(); ++i)
        carry = to_chiral(*gl[i].second) == *cl[i].second;
    r.cases.push_back({"symbol_map_carries_generators", carry,
                       std::to_string(gl.size()) + " generators"});
    return r;
}

SuiteResult run_table(const RunConfig& cfg) {
    SuiteResult r{"table", {}};
    CharacterTable t = load_character_table(data_dir(cfg) +
                                            "/m24_character_table.txt");
    r.cases.push_back({"parse_and_validate", true,
                       data_dir(cfg) + "/m24_character_table.txt"});
    r.cases.push_back({"classes", t.classes.size() == 26,
                       std::to_string(t.classes.size())});
    r.cases.push_back({"irreps", t.irreps.size() == 26,
                       std::to_string(t.irreps.size())});
    r.cases.push_back({"group_order", t.group_order() == 244823040,
                       int_str(t.group_order())});
    r.cases.push_back({"geometric_classes", t.geometric_classes().size() == 9,
                       std::to_string(t.geometric_classes().size())});
    r.cases.push_back({"identity_permutation_character", t.perm24.at(0) == 24,
                       rat_str(t.perm24.at(0))});
    return r;
}

SuiteResult run_moonshine(const RunConfig& cfg) {
    SuiteResult r{"moonshine", {}};
    CharacterTable table = load_character_table(data_dir(cfg) +
                                                "/m24_character_table.txt");
    TwiningData fd = load_twining_fixtures(data_dir(cfg) +
                                           "/twining_forms.json");
    long pi = std::max<long>(cfg.prec, 2);
    CharacterBasis cb = CharacterBasis::build(pi, pi - 1);
    Decomposition de = cb.decompose(k3_elliptic_genus(cb.prec24), pi - 1);
    bool a1 = !de.massive.empty() && de.massive[0] == 90;
    bool has45 = false;
    for (const auto& irr : table.irreps) has45 = has45 || irr.dim == 45;
    r.cases.push_back({"massive_level_one_is_twice_45", a1 && has45,
                       "m_1 = " + (de.massive.empty()
                                       ? std::string("?")
                                       : rat_str(de.massive[0]))});
    for (const auto& cls : table.geometric_classes()) {
        ClassReport rep = theorem_check(cls, cb, table, fd, pi);
        std::string detail = "e=" + rat_str(rep.e);
        if (!rep.messages.empty()) detail += ", " + rep.messages.front();
        if (rep.pass) {
            detail += ", traces";
            for (const auto& t : rep.traces) detail += " " + rat_str(t);
        }
        r.cases.push_back({"character_vs_trace." + cls, rep.pass, detail});
        ClassReport lef = lefschetz_check(cls, cb, table, fd, pi);
        r.cases.push_back({"euler_characteristic." + cls, lef.pass,
                           "c_zero=" + rat_str(lef.c_zero)});
    }
    return r;
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "ring") return run_ring(cfg);
    if (name == "triple-product") return run_triple_product(cfg);
    if (name == "opes") return run_opes(cfg);
    if (name == "closure") return run_closure(cfg);
    if (name == "filtration") return run_filtration(cfg);
    if (name == "gr") return run_gr(cfg);
    if (name == "adjoint") return run_adjoint(cfg);
    if (name == "bridge") return run_bridge(cfg);
    if (name == "table") return run_table(cfg);
    if (name == "moonshine") return run_moonshine(cfg);
    throw std::invalid_argument("unknown suite " + name);
}

// ------------------------------------------------------------- subcommands

std::optional<QYSeries> build_series(const std::string& name, long prec) {
    long p24 = 24 * prec;
    if (name == "eta") return eta(p24);
    if (name == "theta1") return theta_prod(p24);
    if (name == "theta2") return theta2(p24);
    if (name == "theta3") return theta3(p24);
    if (name == "theta4") return theta4(p24);
    if (name == "phi01") return phi_0_1(p24);
    if (name == "phi-21") return phi_m2_1(p24);
    if (name == "k3") return k3_elliptic_genus(p24);
    if (name == "ch0")
        return CharacterBasis::build(std::max<long>(prec, 2), 1)
            .ch_zero.clip(p24);
    if (name == "ch-half")
        return CharacterBasis::build(std::max<long>(prec, 2), 1)
            .ch_half.clip(p24);
    if (name.rfind("massive:", 0) == 0) {
        long n = 0;
        try {
            std::size_t used = 0;
            n = std::stol(name.substr(8), &used);
            if (used != name.size() - 8) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (n < 1) return std::nullopt;
        return CharacterBasis::build(std::max<long>(prec, n + 1), n)
            .massive(n)
            .clip(p24);
    }
    if (name == "sigma") {
        long pi = std::max<long>(prec, 2);
        CharacterBasis cb = CharacterBasis::build(pi, pi - 1);
        Decomposition d = cb.decompose(k3_elliptic_genus(cb.prec24), pi - 1);
        return CharacterBasis::sigma_series(d, 24 * pi - 3).clip(p24 - 3);
    }
    return std::nullopt;
}

int cmd_expand(const std::string& name, const RunConfig& cfg) {
    auto s = build_series(name, cfg.prec);
    if (!s) {
        std::cerr << "error: unknown series name " << name << "\n";
        return 2;
    }
    emit_series(*s, cfg.format);
    return 0;
}

int cmd_decompose(const std::string& target, const RunConfig& cfg) {
    long pi = std::max<long>(cfg.prec, 2);
    CharacterBasis cb = CharacterBasis::build(pi, pi - 1);
    QYSeries z = QYSeries::zero(cb.prec24);
    if (target == "k3") {
        z = k3_elliptic_genus(cb.prec24);
    } else {
        CharacterTable table = load_character_table(
            data_dir(cfg) + "/m24_character_table.txt");
        TwiningData fd =
            load_twining_fixtures(data_dir(cfg) + "/twining_forms.json");
        z = twining_genus(target, table, fd, pi);
    }
    emit_decomposition(cb.decompose(z, pi - 1), cfg.format);
    return 0;
}

int cmd_twining(const std::string& cls, const RunConfig& cfg) {
    CharacterTable table =
        load_character_table(data_dir(cfg) + "/m24_character_table.txt");
    TwiningData fd =
        load_twining_fixtures(data_dir(cfg) + "/twining_forms.json");
    emit_series(twining_genus(cls, table, fd, cfg.prec), cfg.format);
    return 0;
}

int cmd_mckay(const std::string& cls, const RunConfig& cfg) {
    CharacterTable table =
        load_character_table(data_dir(cfg) + "/m24_character_table.txt");
    TwiningData fd =
        load_twining_fixtures(data_dir(cfg) + "/twining_forms.json");
    long pi = std::max<long>(cfg.prec, 2);
    CharacterBasis cb = CharacterBasis::build(pi, pi - 1);
    Decomposition d = cb.decompose(k3_elliptic_genus(cb.prec24), pi - 1);
    QYSeries sigma_e = CharacterBasis::sigma_series(d, 24 * pi - 3);
    emit_series(mckay_thompson(cls, table, fd, sigma_e, cfg.prec), cfg.format);
    return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg) {
    static const std::vector<std::string> all = {
        "ring", "triple-product", "opes",   "closure",  "filtration",
        "gr",   "adjoint",        "bridge", "table",    "moonshine"};
    std::vector<std::string> todo;
    if (suite == "all")
        todo = all;
    else
        todo.push_back(suite);

    int rc = 0;
    json jall = json::array();
    for (const auto& s : todo) {
        SuiteResult r;
        try {
            r = run_suite(s, cfg);
        } catch (const std::invalid_argument&) {
            throw;  // usage error, handled by the caller
        } catch (const std::exception& ex) {
            r.suite = s;
            r.cases.push_back({"load", false, ex.what()});
            rc = 2;
        }
        if (!r.pass() && rc < 1) rc = 1;
        if (cfg.format == "json")
            jall.push_back(suite_json(r));
        else if (cfg.format == "csv")
            emit_suite_csv(r);
        else
            emit_suite_text(r);
    }
    if (cfg.format == "json") std::cout << jall.dump(2) << "\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact workbench: Jacobi forms and unitary characters, the K3 "
        "elliptic-genus decomposition, M24 twining series, and a free-field "
        "superconformal vertex engine."};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--prec", cfg.prec, "q-series precision (orders)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--data", cfg.data,
                        "data directory (else CHM_DATA_DIR, else ./data)");
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized suites");
        sub->add_option("--dim", cfg.dim, "number of free-field pairs N")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-weight", cfg.max_weight,
                        "conformal-weight cutoff for basis checks")
            ->check(CLI::PositiveNumber);
    };

    std::string name, target = "k3", cls, suite;
    CLI::App* expand = app.add_subcommand("expand", "print a named q-series");
    expand->add_option("name", name,
                       "eta, theta1..theta4, phi01, phi-21, ch0, ch-half, "
                       "massive:<n>, k3, sigma")
        ->required();
    add_common(expand);

    CLI::App* decompose = app.add_subcommand(
        "decompose", "decompose a genus in the unitary character basis");
    decompose->add_option("target", target, "k3 or a conjugacy class name");
    add_common(decompose);

    CLI::App* twining =
        app.add_subcommand("twining", "print a twining elliptic genus");
    twining->add_option("class", cls, "conjugacy class name")->required();
    add_common(twining);

    CLI::App* mckay = app.add_subcommand(
        "mckay", "print a McKay-Thompson trace series");
    mckay->add_option("class", cls, "conjugacy class name")->required();
    add_common(mckay);

    CLI::App* verify =
        app.add_subcommand("verify", "run a verification suite");
    verify
        ->add_option("suite", suite,
                     "ring, triple-product, opes, closure, filtration, gr, "
                     "adjoint, bridge, table, moonshine, all")
        ->required();
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(expand)) return cmd_expand(name, cfg);
        if (app.got_subcommand(decompose)) return cmd_decompose(target, cfg);
        if (app.got_subcommand(twining)) return cmd_twining(cls, cfg);
        if (app.got_subcommand(mckay)) return cmd_mckay(cls, cfg);
        if (app.got_subcommand(verify)) return cmd_verify(suite, cfg);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
