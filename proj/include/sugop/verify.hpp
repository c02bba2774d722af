#ifndef SUGOP_VERIFY_HPP
#define SUGOP_VERIFY_HPP

#include "sugop/checks.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace sugop::verify {

struct CaseResult {
    std::string name;
    std::string params;
    std::string status;  // pass / fail / skipped
    std::string expected, actual;
    double elapsed_ms = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;

    bool ok() const {
        for (const auto& c : cases)
            if (c.status == "fail") return false;
        return true;
    }
    size_t failed() const {
        size_t n = 0;
        for (const auto& c : cases)
            if (c.status == "fail") ++n;
        return n;
    }
};

struct Options {
    unsigned long long seed = 0;
    int jobs = 0;  // 0 = hardware concurrency
    bool quick = false;
    long long max_weight = 4;   // flambda / hyper weight bound
    int kmax2 = 4;              // doubled Sugawara index bound
    int level = 3;              // truncation level n for centrality/specialisation
};

struct Case {
    std::string name, params;
    std::function<checks::CheckResult()> fn;
};

// Runs the cases (in parallel unless jobs == 1) and reports in input order.
inline SuiteReport run_cases(const std::string& suite, std::vector<Case> cases, int jobs) {
    SuiteReport rep;
    rep.suite = suite;
    rep.cases.resize(cases.size());
    std::atomic<size_t> next{0};
    unsigned hw = std::thread::hardware_concurrency();
    size_t nworkers = jobs > 0 ? (size_t)jobs : (hw ? hw : 2);
    nworkers = std::min(nworkers, cases.size() ? cases.size() : (size_t)1);
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            auto t0 = std::chrono::steady_clock::now();
            CaseResult r;
            r.name = cases[i].name;
            r.params = cases[i].params;
            try {
                checks::CheckResult c = cases[i].fn();
                r.status = c.ok ? "pass" : "fail";
                if (!c.ok) {
                    r.expected = c.expected;
                    r.actual = c.actual;
                }
            } catch (const std::exception& e) {
                r.status = "fail";
                r.expected = "no exception";
                r.actual = e.what();
            }
            r.elapsed_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            rep.cases[i] = std::move(r);
        }
    };
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rep;
}

namespace detail {

inline std::string kv(const std::string& k, long long v) {
    return k + "=" + std::to_string(v);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Suite builders.

inline SuiteReport suite_residues(const Options& o) {
    std::vector<Case> cs;
    int span = o.quick ? 4 : 6;
    for (int i = -span; i <= span; ++i)
        cs.push_back({"res2 formula row", detail::kv("i", i), [i, span]() {
                          for (int j = -span; j <= span; ++j) {
                              auto r = checks::residue_formula_case(i, j);
                              if (!r.ok) return r;
                          }
                          return checks::pass();
                      }});
    for (int m = -span; m <= span; ++m)
        cs.push_back({"res2 derivative row", detail::kv("m", m), [m, span]() {
                          for (int n = -span; n <= span; ++n) {
                              auto r = checks::residue_derivative_case(m, n);
                              if (!r.ok) return r;
                          }
                          return checks::pass();
                      }});
    return run_cases("residues", std::move(cs), o.jobs);
}

inline SuiteReport suite_duality(const Options& o) {
    std::vector<Case> cs;
    int span = o.quick ? 5 : 8;
    for (int n = -span; n <= span; ++n)
        cs.push_back({"duality row", detail::kv("n", n), [n, span]() {
                          for (int m = -span; m <= span; ++m) {
                              auto r = checks::duality_case(n, m);
                              if (!r.ok) return r;
                          }
                          return checks::pass();
                      }});
    int nrand = o.quick ? 10 : 50;
    std::mt19937_64 eng(o.seed);
    for (int t = 0; t < nrand; ++t) {
        // draw the function up front so the case is self-contained
        TwoVarFun f;
        for (int i = 0; i < 4; ++i) {
            long long ii = (long long)(eng() % 9) - 4, jj = (long long)(eng() % 9) - 4;
            long long num = (long long)(eng() % 19) - 9, den = 1 + (long long)(eng() % 9);
            f.add((int)ii, (int)jj, Scalar(Rational(num, den)));
        }
        cs.push_back({"reconstruction", detail::kv("trial", t),
                      [f]() { return checks::reconstruction_case(f, 12); }});
    }
    return run_cases("duality", std::move(cs), o.jobs);
}

inline SuiteReport suite_casimir(const Options& o) {
    std::vector<Case> cs;
    cs.push_back({"finite casimir identities", "", checks::casimir_finite_case});
    for (int n = -4; n <= 4; ++n)
        cs.push_back({"bracket sums row", detail::kv("n", n), [n]() {
                          for (int m = -4; m <= 4; ++m) {
                              auto r = checks::casimir_bracket_case(n, m);
                              if (!r.ok) return r;
                          }
                          return checks::pass();
                      }});
    return run_cases("casimir", std::move(cs), o.jobs);
}

inline SuiteReport suite_plambda(const Options& o) {
    std::vector<Case> cs;
    cs.push_back({"explicit P1 P2", "", checks::plambda_explicit_case});
    long long top = o.quick ? 5 : 8;
    for (long long lam = 1; lam <= top; ++lam)
        cs.push_back({"homogeneity and full support", detail::kv("lambda", lam),
                      [lam]() { return checks::plambda_support_case(lam); }});
    return run_cases("plambda", std::move(cs), o.jobs);
}

inline SuiteReport suite_flambda(const Options& o) {
    std::vector<Case> cs;
    long long top = o.quick ? 2 : o.max_weight;
    for (long long lam = 0; lam <= top; ++lam)
        for (long long mu = lam; mu <= top; ++mu)
            cs.push_back({"factorisation", detail::kv("lambda", lam) + " " + detail::kv("mu", mu),
                          [lam, mu]() { return checks::flambda_case(lam, mu); }});
    for (long long lam = 0; lam <= top; ++lam)
        cs.push_back({"leading coefficient", detail::kv("lambda", lam),
                      [lam]() { return checks::flambda_leading_case(lam); }});
    return run_cases("flambda", std::move(cs), o.jobs);
}

inline SuiteReport suite_centrality(const Options& o) {
    std::vector<Case> cs;
    int kb = o.quick ? 2 : o.kmax2;
    int target2 = 2 * o.level;
    for (int k2 = -kb; k2 <= kb; ++k2)
        for (Gen g : kSl2Basis)
            cs.push_back({"commutator vanishes",
                          detail::kv("k2", k2) + " g=" + std::string(1, gen_letter(g)),
                          [k2, g, target2]() {
                              for (int m = -2; m <= 2; ++m)
                                  for (int off = 0; off <= 1; ++off) {
                                      auto r = checks::centrality_case(k2, g, 2 * m + off,
                                                                       target2);
                                      if (!r.ok) return r;
                                  }
                              return checks::pass();
                          }});
    for (int k2 : {-2, 0, 2})
        cs.push_back({"generic-level identity", detail::kv("k2", k2), [k2]() {
                          for (int m = -2; m <= 2; ++m) {
                              auto r = checks::generic_commutator_case(k2, m, 4);
                              if (!r.ok) return r;
                          }
                          return checks::pass();
                      }});
    return run_cases("centrality", std::move(cs), o.jobs);
}

inline SuiteReport suite_specialization(const Options& o) {
    std::vector<Case> cs;
    int kb = o.quick ? 2 : o.kmax2;
    int n2 = 2 * o.level;
    for (int k2 = -kb; k2 <= kb; ++k2)
        cs.push_back({"Sp(S2_k) is the one-variable operator of doubled index",
                      detail::kv("k2", k2),
                      [k2, n2]() { return checks::specialization_case(k2, n2); }});
    return run_cases("specialization", std::move(cs), o.jobs);
}

inline SuiteReport suite_expansion(const Options& o) {
    std::vector<Case> cs;
    for (int n = -3; n <= 3; ++n)
        cs.push_back({"leading expansion of the basis", detail::kv("n", n),
                      [n]() { return checks::hE1_case(n); }});
    for (long long k = -2; k <= 3; ++k) {
        cs.push_back({"one-variable congruence", detail::kv("k", k),
                      [k]() { return checks::expansion1_case(k, Alg::One); }});
        if (!o.quick)
            cs.push_back({"one-variable congruence (s)", detail::kv("k", k),
                          [k]() { return checks::expansion1_case(k, Alg::S); }});
    }
    for (int k2 = -4; k2 <= 7; ++k2)
        cs.push_back({"two-variable congruence", detail::kv("k2", k2),
                      [k2]() { return checks::expansion2_case(k2); }});
    for (int k2 = -4; k2 <= 4; ++k2)
        cs.push_back({"renormalised leading term", detail::kv("k2", k2),
                      [k2]() { return checks::lstorto_leading_case(k2); }});
    return run_cases("expansion", std::move(cs), o.jobs);
}

inline SuiteReport suite_derivl(const Options& o) {
    std::vector<Case> cs;
    long long kb = o.quick ? 1 : 2, mb = o.quick ? 2 : 3;
    for (long long k = -kb; k <= kb; ++k)
        for (long long m = -mb; m <= mb; ++m)
            cs.push_back({"u_m derivative of S2_k",
                          detail::kv("k", k) + " " + detail::kv("m", m),
                          [k, m]() { return checks::derivl_case(1, k, m); }});
    for (long long k = -kb; k <= kb; ++k)
        for (int which : {2, 3, 4})
            cs.push_back({"identity " + std::to_string(which), detail::kv("k", k),
                          [which, k]() { return checks::derivl_case(which, k, 0); }});
    cs.push_back({"identity 5", "", []() { return checks::derivl_case(5, 0, 0); }});
    cs.push_back({"identity 6", "", []() { return checks::derivl_case(6, 0, 0); }});
    return run_cases("derivl", std::move(cs), o.jobs);
}

inline SuiteReport suite_derivcoord(const Options& o) {
    std::vector<Case> cs;
    long long span = o.quick ? 2 : 3;
    for (long long m = -span; m <= span; ++m)
        for (bool vf : {false, true})
            for (bool beta : {false, true}) {
                std::string nm = std::string(vf ? "v" : "u") + "_m on "
                                 + (beta ? "beta" : "alpha");
                cs.push_back({nm, detail::kv("m", m), [vf, m, beta, span]() {
                                  for (long long i = -span; i <= span; ++i) {
                                      auto r = checks::derivcoord_case(vf, m, beta, i);
                                      if (!r.ok) return r;
                                  }
                                  return checks::pass();
                              }});
            }
    return run_cases("derivcoord", std::move(cs), o.jobs);
}

inline SuiteReport suite_ff_equivariance(const Options& o) {
    std::vector<Case> cs;
    for (long long n = -2; n <= 1; ++n)
        for (long long m = 0; m <= 2; ++m)
            cs.push_back({"equivariance", detail::kv("n", n) + " " + detail::kv("m", m),
                          [n, m]() { return checks::ff_equivariance_case(n, m); }});
    return run_cases("ff-equivariance", std::move(cs), o.jobs);
}

inline SuiteReport suite_hyper(const Options& o) {
    std::vector<Case> cs;
    long long top = o.quick ? 2 : std::min<long long>(o.max_weight, 3);
    for (long long lam = 0; lam <= top; ++lam)
        for (long long mu = lam; mu <= top; ++mu)
            for (long long nu = mu - lam; nu <= lam + mu; nu += 2)
                cs.push_back({"membership and ode residual",
                              detail::kv("lambda", lam) + " " + detail::kv("mu", mu) + " "
                                  + detail::kv("nu", nu),
                              [lam, mu, nu]() { return checks::hyper_case(lam, mu, nu); }});
    return run_cases("hyper", std::move(cs), o.jobs);
}

inline SuiteReport suite_weyl(const Options& o) {
    std::vector<Case> cs;
    for (long long nu = 0; nu <= 4; ++nu)
        cs.push_back({"casimir eigenvalue", detail::kv("nu", nu),
                      [nu]() { return checks::weyl_casimir1_case(nu); }});
    long long top = o.quick ? 1 : 2;
    for (long long lam = 0; lam <= top; ++lam)
        for (long long mu = 0; mu <= top; ++mu)
            cs.push_back({"degree-0 blocks vs hypergeometric coordinates",
                          detail::kv("lambda", lam) + " " + detail::kv("mu", mu),
                          [lam, mu]() { return checks::weyl_block_case(lam, mu); }});
    for (int k2 = -2; k2 <= 4; ++k2)
        cs.push_back({"a=0 consistency", detail::kv("k2", k2), [k2, top]() {
                          for (long long lam = 0; lam <= top; ++lam)
                              for (long long mu = 0; mu <= top; ++mu) {
                                  auto r = checks::weyl_a0_case(k2, lam, mu);
                                  if (!r.ok) return r;
                              }
                          return checks::pass();
                      }});
    return run_cases("weyl", std::move(cs), o.jobs);
}

inline SuiteReport suite_independence(const Options& o) {
    std::vector<Case> cs;
    cs.push_back({"linear independence mod J(1)", "k2=-4..3", checks::independence_case});
    cs.push_back({"pairwise products nonzero", "k2=-4..3", checks::pairwise_products_case});
    return run_cases("independence", std::move(cs), o.jobs);
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "residues",  "duality",        "casimir", "plambda",    "flambda",
        "centrality", "specialization", "expansion", "derivl",  "derivcoord",
        "ff-equivariance", "hyper",    "weyl",    "independence"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const Options& o) {
    if (name == "residues") return suite_residues(o);
    if (name == "duality") return suite_duality(o);
    if (name == "casimir") return suite_casimir(o);
    if (name == "plambda") return suite_plambda(o);
    if (name == "flambda") return suite_flambda(o);
    if (name == "centrality") return suite_centrality(o);
    if (name == "specialization") return suite_specialization(o);
    if (name == "expansion") return suite_expansion(o);
    if (name == "derivl") return suite_derivl(o);
    if (name == "derivcoord") return suite_derivcoord(o);
    if (name == "ff-equivariance") return suite_ff_equivariance(o);
    if (name == "hyper") return suite_hyper(o);
    if (name == "weyl") return suite_weyl(o);
    if (name == "independence") return suite_independence(o);
    throw std::invalid_argument("unknown suite: " + name);
}

inline std::vector<SuiteReport> run_all(const Options& o) {
    std::vector<SuiteReport> out;
    for (const auto& n : suite_names()) out.push_back(run_suite(n, o));
    return out;
}

// Text serialization; timings are opt-in so that reports are byte-identical
// across runs with the same seed and flags.
inline std::string report_text(const SuiteReport& r, bool timings = false) {
    std::ostringstream os;
    os << "suite " << r.suite << "\n";
    for (const auto& c : r.cases) {
        os << "  [" << (c.status == "pass" ? "ok" : c.status) << "] " << c.name;
        if (!c.params.empty()) os << " (" << c.params << ")";
        if (timings) {
            std::ostringstream ms;
            ms.setf(std::ios::fixed);
            ms.precision(1);
            ms << c.elapsed_ms;
            os << " [" << ms.str() << " ms]";
        }
        os << "\n";
        if (c.status == "fail") {
            os << "       expected: " << c.expected << "\n";
            os << "       actual:   " << c.actual << "\n";
        }
    }
    os << (r.ok() ? "PASS " : "FAIL ") << r.suite << " (" << r.cases.size() << " cases, "
       << r.failed() << " failed)\n";
    return os.str();
}

} // namespace sugop::verify

#endif
