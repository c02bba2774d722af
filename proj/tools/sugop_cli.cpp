// Command-line front end: compute the library's objects on demand and run
// the verification suites, with text or JSON output.

#include "sugop/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace sugop;
using nlohmann::json;

namespace {

json env_to_json(const EnvElement& x) {
    json terms = json::array();
    for (const auto& [m, c] : x.terms()) {
        std::string mono;
        for (const auto& g : m) mono += gen_text(x.alg(), g);
        terms.push_back({{"monomial", mono}, {"coefficient", c.str()}});
    }
    json out{{"schema", 1}, {"terms", terms}};
    if (!x.exact()) out["level2"] = x.level2();
    return out;
}

json poly_to_json(const OperPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        std::string mono;
        for (const auto& [v, k] : e) {
            if (!mono.empty()) mono += "*";
            mono += coord_name(v);
            if (k != 1) mono += "^" + std::to_string(k);
        }
        terms.push_back({{"monomial", mono}, {"coefficient", c.str()}});
    }
    return json{{"schema", 1}, {"terms", terms}};
}

json report_to_json(const verify::SuiteReport& r, bool timings) {
    json cases = json::array();
    for (const auto& c : r.cases) {
        json jc{{"name", c.name}, {"params", c.params}, {"status", c.status}};
        if (c.status == "fail") {
            jc["expected"] = c.expected;
            jc["actual"] = c.actual;
        }
        if (timings) jc["elapsed_ms"] = c.elapsed_ms;
        cases.push_back(jc);
    }
    return json{{"schema", 1}, {"suite", r.suite}, {"ok", r.ok()}, {"cases", cases}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct ComputeArgs {
    long long lambda = 0, mu = 0, nu = 0, k = 0;
    int k2 = 0, level = 1, level2 = INT_MIN, n = 0, floorN = 2;
    std::string alg = "one", side = "t";
    bool factored = false, diag = false;
};

int eff_level2(const ComputeArgs& a) { return a.level2 == INT_MIN ? 2 * a.level : a.level2; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact two-point Sugawara / oper computations for affine sl2"};
    app.require_subcommand(1);
    bool as_json = false;

    ComputeArgs a;
    verify::Options vo;
    bool timings = false;
    app.add_flag("--json", as_json, "JSON output");
    app.add_option("--seed", vo.seed, "seed for random-input verification cases");
    app.add_option("--jobs", vo.jobs, "worker threads (1 = sequential)");

    auto* compute = app.add_subcommand("compute", "compute an object and print it");
    compute->require_subcommand(1);

    auto* c_pl = compute->add_subcommand("plambda", "the polynomial P_lambda");
    c_pl->add_option("--lambda", a.lambda)->required();

    auto* c_fl = compute->add_subcommand("flambda", "the diagonal polynomial f_lambda");
    c_fl->add_option("--lambda", a.lambda)->required();
    c_fl->add_option("--mu", a.mu)->required();
    c_fl->add_flag("--factored", a.factored, "print the roots as A-values");

    auto* c_s1 = compute->add_subcommand("sugawara1", "one-variable Sugawara operator");
    c_s1->add_option("--k", a.k)->required();
    c_s1->add_option("--level", a.level, "truncation level n (drop J(n))")->required();
    c_s1->add_option("--alg", a.alg, "one|t|s");

    auto* c_s2 = compute->add_subcommand("sugawara2", "two-variable Sugawara operator");
    c_s2->add_option("--k2", a.k2, "doubled index")->required();
    c_s2->add_option("--level", a.level, "integer truncation level n");
    c_s2->add_option("--level2", a.level2, "doubled truncation level");

    auto* c_ls = compute->add_subcommand("lstorto", "renormalised operator L_k");
    c_ls->add_option("--k2", a.k2, "doubled index")->required();
    c_ls->add_option("--level", a.level, "integer truncation level n");
    c_ls->add_option("--level2", a.level2, "doubled truncation level");

    auto* c_hy = compute->add_subcommand("hyper", "hypergeometric element of Op2");
    c_hy->add_option("--lambda", a.lambda)->required();
    c_hy->add_option("--mu", a.mu)->required();
    c_hy->add_option("--nu", a.nu)->required();

    auto* c_cm = compute->add_subcommand("coordmap", "coordinate change polynomials");
    c_cm->add_option("--side", a.side, "t|s");
    c_cm->add_option("--n", a.n)->required();
    c_cm->add_option("--floor", a.floorN, "coordinates vanish below -floor");
    c_cm->add_flag("--diag", a.diag, "print the diagonal coordinate of z_n instead");

    auto* c_wm = compute->add_subcommand("weylmat", "degree-0 matrix of 2 S^(2)_k");
    c_wm->add_option("--k2", a.k2)->required();
    c_wm->add_option("--lambda", a.lambda)->required();
    c_wm->add_option("--mu", a.mu)->required();

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    ver->add_option("suite", suite, "suite name or 'all'")->required();
    ver->add_option("--seed", vo.seed, "seed for the random-input cases");
    ver->add_option("--jobs", vo.jobs, "worker threads (1 = sequential)");
    ver->add_flag("--quick", vo.quick, "reduced grids");
    ver->add_option("--max-weight", vo.max_weight, "weight bound for flambda/hyper");
    ver->add_option("--kmax2", vo.kmax2, "doubled Sugawara index bound");
    ver->add_option("--level", vo.level, "truncation level for centrality/specialisation");
    ver->add_flag("--timings", timings, "include per-case timings in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) {
            if (c_pl->parsed()) {
                OperPoly p = p_lambda(a.lambda);
                if (as_json)
                    emit(poly_to_json(p));
                else
                    std::cout << p.str() << "\n";
            } else if (c_fl->parsed()) {
                OperPoly f = f_lambda(a.lambda, a.mu);
                if (a.factored) {
                    // report the computed root set, verified against the factorisation
                    auto r = checks::flambda_case(a.lambda, a.mu);
                    if (!r.ok) {
                        std::cerr << "factorisation failed: " << r.actual << "\n";
                        return 1;
                    }
                    json roots = json::array();
                    std::ostringstream os;
                    for (long long i = 0; i <= a.lambda; ++i) {
                        Rational root = a_lambda(a.mu + a.lambda - 2 * i);
                        roots.push_back(to_string(root));
                        os << (i ? ", " : "") << to_string(root);
                    }
                    if (as_json)
                        emit(json{{"schema", 1}, {"roots", roots}});
                    else
                        std::cout << "roots: {" << os.str() << "}\n";
                } else if (as_json) {
                    emit(poly_to_json(f));
                } else {
                    std::cout << f.str() << "\n";
                }
            } else if (c_s1->parsed()) {
                Alg alg = a.alg == "s" ? Alg::S : (a.alg == "t" ? Alg::T : Alg::One);
                EnvElement s = sugawara1(a.k, 2 * a.level, alg);
                if (as_json)
                    emit(env_to_json(s));
                else
                    std::cout << s.str() << "\n";
            } else if (c_s2->parsed() || c_ls->parsed()) {
                int l2 = eff_level2(a);
                EnvElement s = c_s2->parsed() ? sugawara2(a.k2, l2) : lstorto(a.k2, l2);
                if (as_json)
                    emit(env_to_json(s));
                else
                    std::cout << s.str() << "\n";
            } else if (c_hy->parsed()) {
                OperElement e = hyper_oper(a.lambda, a.mu, a.nu);
                if (as_json) {
                    json coords = json::array();
                    for (const auto& [i, ab] : e.coords)
                        coords.push_back({{"i", i},
                                          {"a", ab.first.str()},
                                          {"b", ab.second.str()}});
                    emit(json{{"schema", 1}, {"coords", coords}, {"function", e.fun().str()}});
                } else {
                    for (const auto& [i, ab] : e.coords)
                        std::cout << "a_" << i << " = " << ab.first.str() << ", b_" << i
                                  << " = " << ab.second.str() << "\n";
                    std::cout << "f = " << e.fun().str() << "\n";
                }
            } else if (c_cm->parsed()) {
                if (a.diag) {
                    std::cout << coord_name(coord_diag(a.n)) << "\n";
                } else {
                    OperPoly p = coord_expand(a.side == "s" ? Var::s : Var::t, a.n, a.floorN);
                    if (as_json)
                        emit(poly_to_json(p));
                    else
                        std::cout << p.str() << "\n";
                }
            } else if (c_wm->parsed()) {
                Matrix m = degree0_matrix2(a.k2, a.lambda, a.mu);
                json rows = json::array();
                auto label = [&](size_t idx) {
                    return "(" + std::to_string(idx / (a.mu + 1)) + ","
                           + std::to_string(idx % (a.mu + 1)) + ")";
                };
                for (size_t r = 0; r < m.size(); ++r) {
                    json row = json::array();
                    for (size_t c = 0; c < m.size(); ++c)
                        row.push_back((Scalar(2) * m[r][c]).str());
                    rows.push_back({{"row", label(r)}, {"entries", row}});
                }
                json cols = json::array();
                for (size_t c = 0; c < m.size(); ++c) cols.push_back(label(c));
                emit(json{{"schema", 1}, {"columns", cols}, {"rows", rows}});
            }
            return 0;
        }

        // verify
        std::vector<verify::SuiteReport> reports;
        if (suite == "all") {
            reports = verify::run_all(vo);
        } else {
            reports.push_back(verify::run_suite(suite, vo));
        }
        bool ok = true;
        if (as_json) {
            json out = json::array();
            for (const auto& r : reports) {
                out.push_back(report_to_json(r, timings));
                ok = ok && r.ok();
            }
            emit(out);
        } else {
            for (const auto& r : reports) {
                std::cout << verify::report_text(r, timings);
                ok = ok && r.ok();
            }
        }
        return ok ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const WeightConstraint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
