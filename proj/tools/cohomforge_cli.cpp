#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "cohomforge/connection.hpp"
#include "cohomforge/json_io.hpp"
#include "cohomforge/lhs.hpp"

using namespace cohomforge;

namespace {

struct JobInputs {
    std::string group_text, module_text, extension_text, fixture, section_text, f_text;
    std::string kernel_text;
    std::string h1_text, h2_text, h3_text;
    std::string output = "-";
    int degree = 2;
    int page_r = 2, page_p = 0, page_q = 0;
    int nodes = 2048;
};

void write_report(const JobInputs& in, const json& report) {
    std::string text = report.dump(2) + "\n";
    if (in.output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(in.output, std::ios::binary);
        if (!out) throw Error("ParseError", "cannot open output path " + in.output);
        out << text;
    }
}

FixtureContext fixture_or_fail(const JobInputs& in) {
    if (in.fixture.empty())
        throw Error("ParseError", "this command needs --fixture (or explicit inputs)");
    return make_fixture(in.fixture);
}

// group + module from --fixture or from explicit JSON
std::pair<FiniteGroup, GModulePtr> resolve_coefficients(const JobInputs& in) {
    if (!in.fixture.empty()) {
        FixtureContext ctx = make_fixture(in.fixture);
        return {ctx.G, ctx.A};
    }
    if (in.group_text.empty() || in.module_text.empty())
        throw Error("ParseError", "need --group and --module, or --fixture");
    FiniteGroup G = group_from_json(parse_json(in.group_text));
    return {G, module_from_json(parse_json(in.module_text), G)};
}

std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw Error("ParseError", std::string(what) + " must be a JSON array");
    std::vector<int> out;
    for (const json& e : j) {
        if (!e.is_number_integer())
            throw Error("ParseError", std::string(what) + " entries are element indices");
        out.push_back(e.get<int>());
    }
    return out;
}

json run_group_info(const JobInputs& in) {
    FiniteGroup G;
    if (!in.fixture.empty())
        G = make_fixture(in.fixture).G;
    else if (!in.group_text.empty())
        G = group_from_json(parse_json(in.group_text));
    else
        throw Error("ParseError", "need --group or --fixture");
    json report = group_to_json(G);
    report["abelian"] = G.is_abelian();
    report["center"] = center(G);
    json orders = json::array();
    for (int g = 0; g < G.order; ++g) orders.push_back(G.element_order(g));
    report["element_orders"] = orders;
    return report;
}

json run_cohomology(const JobInputs& in) {
    auto [G, A] = resolve_coefficients(in);
    CohomologyResult h = cohomology(A, in.degree);
    json report;
    report["degree"] = in.degree;
    report["invariant_factors"] = factors_to_json(h.invariant_factors());
    report["free_rank"] = h.sq.group.free_rank();
    if (auto n = h.order()) report["order"] = *n;
    return report;
}

ExtensionData resolve_extension(const JobInputs& in) {
    if (!in.fixture.empty()) {
        FixtureContext ctx = make_fixture(in.fixture);
        return make_extension(ctx.G, ctx.N.elements);
    }
    if (in.extension_text.empty())
        throw Error("ParseError", "need --extension or --fixture");
    json j = parse_json(in.extension_text);
    if (!j.is_object() || !j.contains("total") || !j.contains("kernel"))
        throw Error("ParseError", "extension needs \"total\" and \"kernel\"");
    FiniteGroup total = group_from_json(j["total"]);
    return make_extension(total, int_list(j["kernel"], "kernel"));
}

json run_extension_class(const JobInputs& in) {
    ExtensionData ext = resolve_extension(in);
    Cochain chi = in.section_text.empty()
                      ? extension_class(ext)
                      : extension_class(ext, int_list(parse_json(in.section_text), "section"));
    json report;
    report["class"] = cochain_to_json(chi);
    report["kernel_invariant_factors"] =
        factors_to_json(ext.coefficient_view->carrier.invariant_factors());
    report["quotient_order"] = ext.qd.quotient.order;
    report["trivial"] = cohomologous(chi, Cochain::zero(chi.coeff, 2)).equivalent;
    return report;
}

json run_pushout(const JobInputs& in) {
    FixtureContext ctx = fixture_or_fail(in);
    KernelHom f = ctx.f;
    if (!in.f_text.empty()) {
        json j = parse_json(in.f_text);
        std::vector<std::vector<i64>> values;
        for (const json& row : j) {
            std::vector<i64> v;
            for (const json& e : row) v.push_back(e.get<i64>());
            values.push_back(std::move(v));
        }
        f = kernel_hom_from_values(ctx.N, ctx.A, std::move(values));
    }
    ExtensionData push = pushout_extension(ctx.G, ctx.N, ctx.A, f);
    Cochain chi = extension_class(push);
    json report;
    report["total_order"] = push.qd.parent.order;
    report["class"] = cochain_to_json(chi);
    report["trivial"] = cohomologous(chi, Cochain::zero(chi.coeff, 2)).equivalent;
    return report;
}

json run_connection(const JobInputs& in) {
    FixtureContext ctx = fixture_or_fail(in);
    std::optional<std::vector<int>> section;
    if (!in.section_text.empty())
        section = int_list(parse_json(in.section_text), "section");
    ConnectionCochain tau = connection_from_section(ctx.G, ctx.N, ctx.A, ctx.f, ctx.qd,
                                                    section ? &*section : nullptr);
    json report;
    report["tau"] = cochain_to_json(tau.underlying);
    report["sigma"] = cochain_to_json(induced_sigma(tau, ctx.qd));
    report["is_connection"] = is_connection(tau.underlying, ctx.f, ctx.N);
    return report;
}

json run_verify_thm1(const JobInputs& in) {
    FixtureContext ctx = fixture_or_fail(in);
    TheoremReport rep = verify_theorem_1(ctx);
    json report;
    report["clause1"] = rep.clause1 ? "pass" : "fail";
    report["clause2"] = rep.clause2 ? "pass" : "fail";
    report["clause3"] = rep.clause3 ? "pass" : "fail";
    report["clause4"] = rep.clause4 ? "pass" : "fail";
    report["sigma"] = cochain_to_json(rep.sigma);
    report["witness2"] = cochain_to_json(rep.witness2);
    return report;
}

json run_lhs_page(const JobInputs& in) {
    FixtureContext ctx = fixture_or_fail(in);
    SpectralPage page = spectral_page(ctx.N, ctx.A, in.page_r, in.page_p, in.page_q);
    json report;
    report["r"] = in.page_r;
    report["p"] = in.page_p;
    report["q"] = in.page_q;
    report["invariant_factors"] = factors_to_json(page.invariant_factors());
    if (auto n = page.order()) report["order"] = *n;
    return report;
}

json run_five_term(const JobInputs& in) {
    FixtureContext ctx = fixture_or_fail(in);
    FiveTermReport rep = five_term(ctx.G, ctx.N, ctx.A, ctx.qd);
    json report;
    json factors = json::array();
    for (const auto& f : rep.factors) factors.push_back(factors_to_json(f));
    report["group_invariant_factors"] = factors;
    report["exact_at_h1_total"] = rep.exact_at_2;
    report["exact_at_kernel_invariants"] = rep.exact_at_3;
    report["exact_at_h2_quotient"] = rep.exact_at_4;
    return report;
}

json run_transgression(const JobInputs& in) {
    FixtureContext ctx = fixture_or_fail(in);
    Cochain d2f = transgression_d2(ctx.G, ctx.N, ctx.A, ctx.f, ctx.qd);
    json report;
    report["d2f"] = cochain_to_json(d2f);
    report["trivial"] = cohomologous(d2f, Cochain::zero(d2f.coeff, 2)).equivalent;
    return report;
}

json run_euler(const JobInputs& in) {
    if (in.h1_text.empty() || in.h2_text.empty())
        throw Error("ParseError", "euler needs --h1 and --h2");
    CircleDiffeoLift h1 = lift_from_json(parse_json(in.h1_text));
    CircleDiffeoLift h2 = lift_from_json(parse_json(in.h2_text));
    json report;
    report["nodes"] = in.nodes;
    report["value"] = euler_cocycle(h1, h2, in.nodes);
    if (!in.h3_text.empty()) {
        CircleDiffeoLift h3 = lift_from_json(parse_json(in.h3_text));
        report["defect"] = cocycle_defect(h1, h2, h3, in.nodes);
    }
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact finite-group cohomology engine"};
    app.require_subcommand(1);

    JobInputs in;
    json (*job)(const JobInputs&) = nullptr;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", in.output, "report path, - for stdout");
        cmd->add_option("--fixture", in.fixture, "bundled context name");
        return cmd;
    };
    auto bind = [&](CLI::App* cmd, json (*fn)(const JobInputs&)) {
        cmd->callback([&job, fn] { job = fn; });
        return cmd;
    };

    CLI::App* c = bind(add_common(app.add_subcommand("group-info", "group facts")), run_group_info);
    c->add_option("--group", in.group_text, "group JSON");

    c = bind(add_common(app.add_subcommand("cohomology", "H^p invariant factors")), run_cohomology);
    c->add_option("--group", in.group_text, "group JSON");
    c->add_option("--module", in.module_text, "coefficient module JSON");
    c->add_option("--degree", in.degree, "cohomology degree");

    c = bind(add_common(app.add_subcommand("extension-class", "chi from a section")),
             run_extension_class);
    c->add_option("--extension", in.extension_text, "extension JSON (total, kernel)");
    c->add_option("--section", in.section_text, "section override, JSON array");

    c = bind(add_common(app.add_subcommand("pushout", "pushout extension and class")), run_pushout);
    c->add_option("--f", in.f_text, "kernel hom values, JSON array per kernel element");

    c = bind(add_common(app.add_subcommand("connection", "connection cochain and sigma")),
             run_connection);
    c->add_option("--section", in.section_text, "section override, JSON array");

    bind(add_common(app.add_subcommand("verify-thm1", "four-clause verification")),
         run_verify_thm1);

    c = bind(add_common(app.add_subcommand("lhs-page", "spectral page invariant factors")),
             run_lhs_page);
    c->add_option("--r", in.page_r, "page index");
    c->add_option("--p", in.page_p, "filtration degree");
    c->add_option("--q", in.page_q, "complementary degree");

    bind(add_common(app.add_subcommand("five-term", "low-degree exact sequence")), run_five_term);

    bind(add_common(app.add_subcommand("transgression", "d2 on the given hom")), run_transgression);

    c = bind(add_common(app.add_subcommand("euler", "Euler cocycle numerics")), run_euler);
    c->add_option("--h1", in.h1_text, "first lift JSON");
    c->add_option("--h2", in.h2_text, "second lift JSON");
    c->add_option("--h3", in.h3_text, "third lift JSON (enables the defect)");
    c->add_option("--nodes", in.nodes, "quadrature node count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        write_report(in, job(in));
    } catch (const Error& e) {
        if (e.code == "ParseError") {
            std::cerr << e.what() << "\n";
            return 2;
        }
        json report;
        report["error"]["code"] = e.code;
        report["error"]["message"] = e.what();
        try {
            write_report(in, report);
        } catch (const Error&) {
            std::cerr << e.what() << "\n";
        }
        return 1;
    }
    return 0;
}
