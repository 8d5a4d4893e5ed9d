// End-to-end checks, one verdict line per criterion. Exit status is the
// number of failed criteria; an optional argv[1] runs a single criterion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cohomforge/connection.hpp"
#include "cohomforge/euler.hpp"
#include "cohomforge/lhs.hpp"

using namespace cohomforge;

namespace {

struct CheckFailure {
    std::string message;
};

void expect(bool ok, const std::string& message) {
    if (!ok) throw CheckFailure{message};
}

// extension class in coefficient-view coordinates -> coefficients in A,
// using the kernel-element <-> A-element index correspondence of pushouts
Cochain view_to_module_coords(const Cochain& chi, const ExtensionData& ext, GModulePtr coeff) {
    Cochain out = Cochain::zero(coeff, chi.degree);
    const auto& view = ext.coefficient_view->carrier;
    for (i64 t = 0; t < chi.tuple_count(); ++t) {
        std::vector<i64> v = chi.value_at(t);
        i64 k = -1;
        for (size_t cand = 0; cand < ext.kernel_coords.size(); ++cand)
            if (view.equal(ext.kernel_coords[cand], v)) {
                k = static_cast<i64>(cand);
                break;
            }
        expect(k >= 0, "extension value missed every kernel element");
        out.set_value(t, coeff->carrier.element_by_index(k));
    }
    return out;
}

void criterion1() {
    for (const std::string& name : fixture_names()) {
        TheoremReport rep = verify_theorem_1(make_fixture(name));
        expect(rep.clause1 && rep.clause2 && rep.clause3 && rep.clause4,
               "clause failed on " + name);
    }
}

void criterion2() {
    for (const std::string& name : fixture_names()) {
        FixtureContext ctx = make_fixture(name);
        Cochain d2f = transgression_d2(ctx.G, ctx.N, ctx.A, ctx.f, ctx.qd);
        Cochain chi = kernel_abelianization_class(ctx.G, ctx.N, ctx.qd);
        Cochain cup = cup_f_chi(ctx.f, chi, ctx.qd);
        expect(cohomologous(d2f, cup.negated()).equivalent,
               "d2 f differs from -(f cup e) on " + name);
    }
}

void criterion3() {
    for (const std::string& name : fixture_names()) {
        FixtureContext ctx = make_fixture(name);
        ConnectionCochain tau = connection_from_section(ctx.G, ctx.N, ctx.A, ctx.f, ctx.qd);
        Cochain sigma = induced_sigma(tau, ctx.qd);  // [-delta tau]
        Cochain minus_d2f = transgression_d2(ctx.G, ctx.N, ctx.A, ctx.f, ctx.qd).negated();
        ExtensionData push = pushout_extension(ctx.G, ctx.N, ctx.A, ctx.f);
        Cochain e_ga = view_to_module_coords(extension_class(push), push, sigma.coeff);
        expect(cohomologous(sigma, minus_d2f).equivalent, "[-delta tau] != -d2 f on " + name);
        expect(cohomologous(e_ga, sigma).equivalent, "e(G_A) != [-delta tau] on " + name);
        expect(cohomologous(e_ga, minus_d2f).equivalent, "e(G_A) != -d2 f on " + name);
    }
}

void criterion4() {
    for (const std::string& name : fixture_names()) {
        FixtureContext ctx = make_fixture(name);
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; p + q <= 2; ++q) {
                SpectralPage e2 = spectral_page(ctx.N, ctx.A, 2, p, q);
                KernelCohomology kc = kernel_cohomology(ctx.N, ctx.A, ctx.qd, q);
                CohomologyResult hp = cohomology(kc.as_quotient_module, p);
                expect(e2.invariant_factors() == hp.invariant_factors(),
                       "E2 mismatch at (" + std::to_string(p) + "," + std::to_string(q) +
                           ") on " + name);
            }
    }
}

void criterion5() {
    for (const std::string& name : fixture_names()) {
        FixtureContext ctx = make_fixture(name);
        for (int k = 0; k <= 2; ++k) {
            i64 prod = 1;
            for (int p = 0; p <= k; ++p) {
                auto n = e_infinity(ctx.N, ctx.A, p, k - p).order();
                expect(n.has_value(), "infinite stable page on " + name);
                prod *= *n;
            }
            auto hk = cohomology(ctx.A, k).order();
            expect(hk.has_value() && prod == *hk,
                   "abutment mismatch in degree " + std::to_string(k) + " on " + name);
        }
    }
}

void criterion6() {
    for (const std::string& name : fixture_names()) {
        FiveTermReport rep = [&] {
            FixtureContext ctx = make_fixture(name);
            return five_term(ctx.G, ctx.N, ctx.A, ctx.qd);
        }();
        expect(rep.exact_at_2 && rep.exact_at_3 && rep.exact_at_4,
               "five-term exactness failed on " + name);
    }
}

void criterion7() {
    struct Setting {
        FiniteGroup Q;
        i64 d;
    };
    std::vector<Setting> settings = {
        {make_standard(StandardKind::Cyclic, 2), 2},
        {direct_product(make_standard(StandardKind::Cyclic, 2),
                        make_standard(StandardKind::Cyclic, 2)),
         2},
        {make_standard(StandardKind::Cyclic, 3), 3},
    };
    for (const Setting& s : settings) {
        GModulePtr A = trivial_module(s.Q, AbelianGroupPresentation::cyclic(s.d));
        CohomologyResult h2 = cohomology(A, 2);
        auto count = h2.sq.group.element_count();
        expect(count.has_value(), "H^2 unexpectedly infinite");
        for (i64 idx = 0; idx < *count; ++idx) {
            Cochain rep = h2.rep_from_class(h2.sq.group.element_by_index(idx));
            ExtensionData ext = extension_from_cocycle(s.Q, A, rep);
            // class_of(recovered) must agree with the input class
            Cochain back = extension_class(ext);
            Cochain back_in_a = view_to_module_coords(back, ext, A);
            expect(cohomologous(back_in_a, rep).equivalent, "round-trip class changed");

            // a cohomologous input must give an isomorphic total group
            Cochain shift = Cochain::zero(A, 1);
            std::vector<i64> one{1};
            shift.set_value(0, one);
            ExtensionData ext2 = extension_from_cocycle(s.Q, A, rep + coboundary(shift));
            expect(is_isomorphic(ext.qd.parent, ext2.qd.parent),
                   "cohomologous cocycles built non-isomorphic totals");
        }
    }
}

// ---- full bar-complex oracle over a prime field ----

int gf_rank(std::vector<std::vector<int>> M, int mod) {
    int rank = 0;
    const int rows = static_cast<int>(M.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(M[0].size());
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (M[r][c] % mod != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(M[rank], M[pivot]);
        int inv = 1;
        while ((M[rank][c] * inv) % mod != 1) ++inv;  // tiny prime fields
        for (int r = 0; r < rows; ++r) {
            if (r == rank || M[r][c] % mod == 0) continue;
            int factor = (M[r][c] * inv) % mod;
            for (int cc = c; cc < cols; ++cc)
                M[r][cc] = ((M[r][cc] - factor * M[rank][cc]) % mod + mod) % mod;
        }
        ++rank;
    }
    return rank;
}

// delta : C^p -> C^{p+1} for the full (non-normalized) bar complex with
// trivial Z/mod coefficients, tuples over all of G including the identity
std::vector<std::vector<int>> bar_delta(const FiniteGroup& G, int p, int mod) {
    auto pow_int = [](int b, int e) {
        int r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    const int src = pow_int(G.order, p);
    const int dst = pow_int(G.order, p + 1);
    std::vector<std::vector<int>> M(dst, std::vector<int>(src, 0));
    std::vector<int> tuple(p + 1, 0);
    for (int t = 0; t < dst; ++t) {
        int rem = t;
        for (int i = p; i >= 0; --i) {
            tuple[i] = rem % G.order;
            rem /= G.order;
        }
        auto src_index = [&](int skip_merge) {
            int idx = 0;
            for (int i = 0; i <= p; ++i) {
                if (i == skip_merge) continue;
                int g = (i == skip_merge + 1 && skip_merge >= 0)
                            ? G.mul(tuple[skip_merge], tuple[i])
                            : tuple[i];
                idx = idx * G.order + g;
            }
            return idx;
        };
        int sign = 1;
        // leading face (trivial action), then the merges, then the final drop
        {
            int idx = 0;
            for (int i = 1; i <= p; ++i) idx = idx * G.order + tuple[i];
            M[t][idx] = (M[t][idx] + 1) % mod;
        }
        for (int i = 0; i < p; ++i) {
            sign = -sign;
            int idx = src_index(i);
            M[t][idx] = ((M[t][idx] + sign) % mod + mod) % mod;
        }
        sign = -sign;
        {
            int idx = 0;
            for (int i = 0; i < p; ++i) idx = idx * G.order + tuple[i];
            M[t][idx] = ((M[t][idx] + sign) % mod + mod) % mod;
        }
    }
    return M;
}

int bar_dimension(const FiniteGroup& G, int p, int mod) {
    auto pow_int = [](int b, int e) {
        int r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    int kernel = pow_int(G.order, p) - gf_rank(bar_delta(G, p, mod), mod);
    int image = p == 0 ? 0 : gf_rank(bar_delta(G, p - 1, mod), mod);
    return kernel - image;
}

void criterion8() {
    std::vector<std::pair<std::string, FiniteGroup>> groups;
    for (int m : {2, 3, 4, 5, 6})
        groups.emplace_back("cyclic" + std::to_string(m), make_standard(StandardKind::Cyclic, m));
    groups.emplace_back("klein", direct_product(make_standard(StandardKind::Cyclic, 2),
                                                make_standard(StandardKind::Cyclic, 2)));
    groups.emplace_back("s3", make_standard(StandardKind::Symmetric, 3));

    for (const auto& [gname, G] : groups)
        for (int mod : {2, 3}) {
            GModulePtr A = trivial_module(G, AbelianGroupPresentation::cyclic(mod));
            for (int p = 0; p <= 2; ++p) {
                std::vector<i64> factors = cohomology(A, p).invariant_factors();
                for (i64 f : factors)
                    expect(f == mod, "non-prime invariant factor with Z/" +
                                         std::to_string(mod) + " coefficients");
                int expected = bar_dimension(G, p, mod);
                expect(static_cast<int>(factors.size()) == expected,
                       "H^" + std::to_string(p) + "(" + gname + "; Z/" + std::to_string(mod) +
                           ") dimension " + std::to_string(factors.size()) + " vs oracle " +
                           std::to_string(expected));
            }
        }
}

void criterion9() {
    CircleDiffeoLift r1{0.7, {}}, r2{2.3, {}};
    expect(std::fabs(euler_cocycle(r1, r2, 2048) + 0.5) < 1e-10, "rotation pair not -1/2");

    CircleDiffeoLift h1{0.4, {{1, 0.05, 0.0}}}, h2{1.9, {{2, 0.0, 0.02}}};
    CircleDiffeoLift h1s = h1;
    h1s.rotation += 2.0 * 3.14159265358979323846;
    expect(std::fabs(euler_cocycle(h1s, h2) - euler_cocycle(h1, h2)) < 1e-12,
           "full-turn shift moved the value");

    std::mt19937 rng(424243);
    std::uniform_real_distribution<double> angle(0.0, 6.283);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto random_lift = [&] {
        CircleDiffeoLift h{angle(rng), {}};
        for (int k = 1; k <= 3; ++k)
            h.fourier.push_back({k, 0.1 / (k * k) * unit(rng), 0.1 / (k * k) * unit(rng)});
        return h;
    };
    for (int trial = 0; trial < 100; ++trial) {
        CircleDiffeoLift a = random_lift(), b = random_lift(), c = random_lift();
        double coarse = cocycle_defect(a, b, c, 2048);
        expect(coarse < 1e-6, "defect too large at 2048 nodes");
        double fine = cocycle_defect(a, b, c, 4096);
        expect(fine <= coarse || fine < 1e-10, "defect grew past the floor when doubling nodes");
    }
}

std::string capture(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    expect(pipe != nullptr, "cannot spawn " + command);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    expect(status == 0, "nonzero exit from " + command);
    return out;
}

void criterion10() {
    const char* cli = std::getenv("COHOMFORGE_CLI");
    expect(cli != nullptr, "COHOMFORGE_CLI is not set");
    std::vector<std::string> jobs = {
        "group-info --fixture q8",
        "cohomology --fixture z4 --degree 2",
        "extension-class --fixture z4",
        "pushout --fixture z2z2split",
        "connection --fixture heisenberg3",
        "verify-thm1 --fixture s3xz2",
        "lhs-page --fixture q8 --r 2 --p 1 --q 1",
        "five-term --fixture z4",
        "transgression --fixture heisenberg3-2id",
        "euler --h1 '{\"rotation\":0.5,\"fourier\":[[1,0.05,0.0]]}' "
        "--h2 '{\"rotation\":1.2}' --h3 '{\"rotation\":0.3}' --nodes 2048",
    };
    for (const std::string& job : jobs) {
        std::string cmd = std::string(cli) + " " + job;
        std::string first = capture(cmd);
        std::string second = capture(cmd);
        expect(!first.empty(), "empty report from " + job);
        expect(first == second, "reports differ between runs of " + job);
    }
}

struct Criterion {
    int number;
    const char* summary;
    void (*run)();
};

const Criterion kCriteria[] = {
    {1, "connection-cochain clauses hold on every context", criterion1},
    {2, "transgression agrees with -(f cup e(G/N'))", criterion2},
    {3, "pushout class, -d2 f, and [-delta tau] coincide", criterion3},
    {4, "E2 pages match quotient cohomology in kernel coefficients", criterion4},
    {5, "stable page orders multiply to |H^k(G;A)|", criterion5},
    {6, "five-term sequence is exact at the interior nodes", criterion6},
    {7, "2-cocycle <-> extension round-trips preserve the class", criterion7},
    {8, "normalized complex agrees with the full bar-complex oracle", criterion8},
    {9, "Euler cocycle numerics within tolerance", criterion9},
    {10, "CLI reports are byte-identical across runs", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (const Criterion& crit : kCriteria) {
        if (only != 0 && crit.number != only) continue;
        std::string verdict = "pass";
        std::string detail;
        try {
            crit.run();
        } catch (const CheckFailure& f) {
            verdict = "fail";
            detail = f.message;
            ++failures;
        } catch (const std::exception& e) {
            verdict = "fail";
            detail = e.what();
            ++failures;
        }
        std::cout << "criterion " << crit.number << ": " << verdict << " - " << crit.summary;
        if (!detail.empty()) std::cout << " [" << detail << "]";
        std::cout << "\n";
    }
    return failures;
}
