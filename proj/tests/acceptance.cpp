// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "bondedkb/catalog.hpp"
#include "bondedkb/diagram.hpp"
#include "bondedkb/errors.hpp"
#include "bondedkb/generate.hpp"
#include "bondedkb/ingest.hpp"
#include "bondedkb/moves.hpp"
#include "bondedkb/skein_engine.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace bkb;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << " [" << t.str() << " s]";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
}

IntLaurent A(int k, long c = 1) { return IntLaurent::monomial(k, c); }

BondedDiagram load(const std::string& name) {
    std::ifstream f(std::string(BONDEDKB_DATA_DIR) + "/" + name);
    if (!f) throw ParseError("missing " + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_diagram(ss.str());
}

int first_chain_edge(const BondedDiagram& d) {
    for (const auto& e : d.edges)
        if (e.kind == EdgeKind::Chain) return e.id;
    return -1;
}

EvaluationOptions plain() {
    EvaluationOptions o;
    o.use_connected_sum_shortcut = false;
    o.memoize = false;
    return o;
}

Coefficient kink(int k) { return Coefficient(IntLaurent::monomial(3 * k, k % 2 ? -1 : 1)); }

PolymerStructure sampled(int n, const std::function<Vec3(double)>& f) {
    PolymerStructure s;
    PolymerChain c;
    for (int i = 0; i < n; ++i) c.points.push_back(f(2 * M_PI * i / n));
    s.chains.push_back(c);
    return s;
}

}  // namespace

int main() {
    const SkeinValue T = SkeinValue::theta(), H = SkeinValue::handcuff();
    const auto& k = constants();

    criterion(1, "generator fixed points", [&] {
        const auto t0 = Clock::now();
        bool ok = evaluate_framed(catalog::theta()).value == T && evaluate_framed(catalog::handcuff()).value == H &&
                  evaluate_topological(catalog::handcuff()).value == SkeinValue::scalar(k.delta_c) * T;
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        return Outcome{ok && secs < 1.0, ""};
    });

    criterion(2, "connected sum with theta and handcuff", [&] {
        GenerateOptions go;
        go.max_crossings = 6;
        go.max_bonds = 2;
        int checked = 0, bad = 0;
        for (std::uint64_t s = 1; s <= 60; ++s) {
            BondedDiagram L = random_diagram(s, go);
            if (L.crossings.size() > 6 || L.bond_count() > 2) continue;
            const SkeinValue v = evaluate(L, plain()).value;
            for (const auto& [g, gv] : {std::pair{catalog::theta(), T}, std::pair{catalog::handcuff(), H}}) {
                BondedDiagram sum = catalog::connect_sum(g, first_chain_edge(g), L, first_chain_edge(L));
                bad += evaluate(sum, plain()).value != k.inv_delta * (gv * v);
            }
            ++checked;
        }
        return Outcome{checked >= 50 && bad == 0,
                       std::to_string(checked) + " diagrams, " + std::to_string(bad) + " mismatches"};
    });

    criterion(3, "two circles joined by two bonds", [&] {
        // 1/mu = A^4/f2 and 2/(delta mu) = -2A^6/(f1 f2)
        const Coefficient inv_mu(A(4), 0, 1), two_inv_dmu(A(6, -2), 1, 1);
        const SkeinValue want = inv_mu * (T * T) - two_inv_dmu * (H * T) + inv_mu * (H * H);
        const SkeinValue got = evaluate_framed(catalog::double_bond()).value;
        return Outcome{got == want && got == k.alpha * H + k.beta * T, ""};
    });

    criterion(4, "TRTX Tp1a reduced polynomial and topological value", [&] {
        BondedDiagram d = load("trtx_tp1a.json");
        BivariateLaurent want;
        want.add_term({3, 0}, A(12) + A(8) + A(4, 2) + A(0));
        want.add_term({2, 1}, A(18, -1) + A(14) + A(10) + A(6, 2) + A(2, 3));
        want.add_term({1, 2}, A(20, -1) + A(16, -1) + A(12) + A(8, -1) + A(4, 2));
        want.add_term({0, 3}, A(18, -1) + A(10, -1));
        const SkeinValue top = SkeinValue::basis(3, 0, Coefficient(A(4), 2, 0));
        const bool red = reduced_polynomial(d) == want;
        const bool topo = evaluate_topological(d).value == top;
        const bool cross = subst_topological(evaluate_framed(d).value) == evaluate_topological(d).value;
        return Outcome{red && topo && cross && writhe(d) == 0,
                       std::string("reduced ") + (red ? "ok" : "differs") + ", topological " + (topo ? "ok" : "differs")};
    });

    criterion(5, "classical bracket against state-sum oracle", [&] {
        GenerateOptions go;
        go.max_bonds = 0;
        go.max_crossings = 5;
        int checked = 0, bad = 0;
        for (std::uint64_t s = 1; s <= 100; ++s) {
            BondedDiagram d = random_diagram(s, go);
            if (d.crossings.size() > 5) continue;
            bad += classical_bracket(d) != oracle::classical_bracket(d);
            ++checked;
        }
        const bool unknot = classical_bracket(catalog::unknot()) == Coefficient(1);
        return Outcome{bad == 0 && unknot && checked > 0,
                       std::to_string(checked) + " diagrams, " + std::to_string(bad) + " mismatches"};
    });

    criterion(6, "move invariance", [&] {
        GenerateOptions go;
        go.max_crossings = 6;
        go.max_bonds = 3;
        RandomMoveOptions iso;
        iso.kinds = {MoveKind::II, MoveKind::III, MoveKind::IV, MoveKind::IV_prime, MoveKind::RV, MoveKind::BondSlide};
        iso.max_crossings = 8;
        RandomMoveOptions all;
        all.max_crossings = 8;
        int bad_iso = 0, bad_kink = 0, bad_norm = 0, kinks = 0;
        for (std::uint64_t s = 1; s <= 100; ++s) {
            BondedDiagram d = random_diagram(s, go);
            const SkeinValue v = evaluate_framed(d).value;
            bad_iso += evaluate_framed(random_moves(d, 10, s + 1000, iso).diagram).value != v;
            auto r = random_moves(d, 10, s + 2000, all);
            kinks += r.kink_writhe != 0;
            bad_kink += evaluate_framed(r.diagram).value != kink(r.kink_writhe) * v;
            bad_norm += normalized_value(r.diagram) != normalized_value(d);
        }
        // a single kink on the unknot, each sign
        for (bool left : {false, true}) {
            for (MoveKind mk : {MoveKind::I_pos, MoveKind::I_neg}) {
                auto sites = enumerate_sites(catalog::unknot(), mk, false);
                for (auto site : sites) {
                    if (site.flag != left) continue;
                    BondedDiagram kd = apply_move(catalog::unknot(), site);
                    const int w = mk == MoveKind::I_pos ? 1 : -1;
                    bad_kink += evaluate_framed(kd).value != kink(w) * evaluate_framed(catalog::unknot()).value;
                }
            }
        }
        return Outcome{bad_iso == 0 && bad_kink == 0 && bad_norm == 0 && kinks > 0,
                       "100 sequences each; mismatches: isotopy " + std::to_string(bad_iso) + ", kink " +
                           std::to_string(bad_kink) + ", normalized " + std::to_string(bad_norm)};
    });

    criterion(7, "order and parallel determinism", [&] {
        GenerateOptions go;
        go.max_crossings = 8;
        go.max_bonds = 3;
        int bad = 0;
        for (std::uint64_t s = 1; s <= 100; ++s) {
            BondedDiagram d = random_diagram(s, go);
            const std::string ref = evaluate(d).value.to_json().dump();
            for (std::uint64_t order : {7ull, 1000003ull}) {
                EvaluationOptions o;
                o.order_seed = order;
                bad += evaluate(d, o).value.to_json().dump() != ref;
            }
            EvaluationOptions par;
            par.parallel = true;
            par.order_seed = s;
            bad += evaluate(d, par).value.to_json().dump() != ref;
        }
        return Outcome{bad == 0, "100 diagrams, " + std::to_string(bad) + " differences"};
    });

    criterion(8, "reduced polynomial has no residual denominator", [&] {
        GenerateOptions go;
        go.max_crossings = 8;
        go.min_bonds = 1;
        go.max_bonds = 3;
        std::vector<BondedDiagram> ds = {catalog::theta(), catalog::handcuff(), catalog::double_bond(),
                                         load("trtx_tp1a.json")};
        for (std::uint64_t s = 1; s <= 100; ++s) ds.push_back(random_diagram(s, go));
        int bad = 0;
        for (const auto& d : ds) {
            try {
                reduced_polynomial(d);
            } catch (const InternalConsistencyError&) {
                ++bad;
            }
        }
        return Outcome{bad == 0, std::to_string(ds.size()) + " diagrams, " + std::to_string(bad) + " failures"};
    });

    criterion(9, "ingestion stable across projection seeds", [&] {
        PolymerStructure loop = sampled(12, [](double t) { return Vec3{std::cos(t), std::sin(t), 0.05 * std::sin(3 * t)}; });
        PolymerStructure trefoil = sampled(24, [](double t) {
            return Vec3{std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)};
        });
        PolymerStructure bonded = sampled(16, [](double t) { return Vec3{std::cos(t), std::sin(t), 0.05 * std::sin(3 * t)}; });
        bonded.bonds = {{0, 1, 0, 5}, {0, 9, 0, 13}};
        bool ok = true;
        std::string detail;
        for (const auto& [name, s] : {std::pair{"loop", loop}, std::pair{"trefoil", trefoil}, std::pair{"2-bond loop", bonded}}) {
            std::set<std::string> values;
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                ProjectionConfig cfg;
                cfg.seed = seed;
                BondedDiagram d = project(s, cfg);
                ok = ok && serialize_diagram(project(s, cfg)) == serialize_diagram(d);
                values.insert(evaluate_topological(d).value.to_json().dump());
            }
            ok = ok && values.size() == 1;
            detail += std::string(detail.empty() ? "" : "; ") + name + ": " + std::to_string(values.size()) +
                      " distinct value(s)";
        }
        return Outcome{ok, detail};
    });

    criterion(10, "12 crossings and 3 bonds under 5 s", [&] {
        GenerateOptions go;
        go.max_crossings = 12;
        go.min_bonds = 3;
        go.max_bonds = 3;
        go.moves = 40;
        for (std::uint64_t s = 1; s < 5000; ++s) {
            BondedDiagram d = random_diagram(s, go);
            if (d.crossings.size() != 12 || d.bond_count() != 3) continue;
            const auto t0 = Clock::now();
            evaluate(d);
            const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
            std::ostringstream o;
            o << "seed " << s << ", " << secs << " s";
            return Outcome{secs < 5.0, o.str()};
        }
        return Outcome{false, "no 12-crossing 3-bond diagram generated"};
    });

    return failures == 0 ? 0 : 1;
}
