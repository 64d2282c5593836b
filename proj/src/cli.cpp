#include "ranklab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ranklab/dep.hpp"
#include "ranklab/selftest.hpp"
#include "ranklab/sim.hpp"

namespace ranklab::cli {

using nlohmann::json;
using codes::Cdc;
using codes::RankCode;

namespace {

json base_record(const std::string& command, const json& params) {
    return json{{"command", command}, {"params", params}};
}

void put_value(json& rec, const Rat& v) {
    rec["value_rational"] = rat_to_string(v);
    rec["value_float"] = to_double(v);
}

void put_value(json& rec, const Int& v) {
    rec["value_rational"] = v.str();
    rec["value_float"] = to_double(Rat(v));
}

void put_value(json& rec, const Interval& v, const char* kind) {
    rec["value_float"] = v.mid();
    rec["value_interval"] = {v.lo, v.hi};
    rec["bound_kind"] = kind;
}

void put_bound(json& rec, const dep::ClosedFormBound& b, const char* kind) {
    Interval v = b.value();
    put_value(rec, v, kind);
    rec["exponent_rational"] = rat_to_string(b.exponent);
    rec["exponent_float"] = to_double(b.exponent);
}

void emit(std::ostream& out, const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path);
        if (!file) throw Error("cannot open output file " + out_path);
        file << text;
    }
}

void emit_json(std::ostream& out, const std::string& out_path, const json& rec) {
    emit(out, out_path, rec.dump(2) + "\n");
}

RankCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open code file " + path);
    return codes::read_rank_code(in);
}

Cdc load_cdc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open cdc file " + path);
    return codes::read_cdc(in);
}

const MatrixGF& sent_word(const RankCode& code, long sent) {
    if (sent < 0 || sent >= static_cast<long>(code.codebook.size())) {
        throw ParameterViolation("--sent index out of range");
    }
    return code.codebook[sent];
}

const Subspace& sent_word(const Cdc& cdc, long sent) {
    if (sent < 0 || sent >= static_cast<long>(cdc.codebook.size())) {
        throw ParameterViolation("--sent index out of range");
    }
    return cdc.codebook[sent];
}

// Subspace file: header "r n", then r basis rows in the matrix text format.
Subspace load_subspace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open subspace file " + path);
    long q, r, n;
    if (!(in >> q >> r >> n)) throw Error("subspace file: bad header (expected: q r n)");
    Field f = field_from_order(q);
    MatrixGF basis = MatrixGF::from_text(f, static_cast<int>(r), static_cast<int>(n), in);
    return row_space(basis);
}

Subspace canonical_unit_subspace(const Field& f, int n, int dim) {
    std::vector<int> coords;
    for (int i = 0; i < dim; ++i) coords.push_back(i);
    return unit_span(f, n, coords);
}

std::string fig1_cell(const std::optional<Rat>& e) {
    return e ? rat_to_string(*e) : std::string();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParameterViolation& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const NonPrimeCharacteristic& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedOrder& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const AmbientMismatch& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const NotACodeword& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const NoSuchConfiguration& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const NoValidOutput& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const ExcludedRegime& e) {
        err << "excluded regime: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ranklab - rank metric and constant-dimension code laboratory"};
    app.require_subcommand(1);

    long q = 2, m = 0, n = 0, r = 0, d = 0, u = 0, s = 0, w = 0, a = 0, b = 0, c = 0, k = 1;
    long t = -1, v = 0, mu = 0, sent = 0, eps = 0, rho = 0;
    long long trials = 100000, budget = default_budget();
    uint64_t seed = 0;
    int workers = 1;
    std::string code_path, cdc_path, uspace_path, out_path, channel, decoder = "subspace";
    std::string only_filter;
    bool csv = false, exhaustive = false, list_only = false;

    // ---- qcomb ----
    CLI::App* qcomb_cmd = app.add_subcommand("qcomb", "exact q-analog counting functions");
    qcomb_cmd->require_subcommand(1);
    auto add_qcomb = [&](const std::string& name, const std::string& desc,
                         std::vector<std::pair<std::string, long*>> opts) {
        CLI::App* sub = qcomb_cmd->add_subcommand(name, desc);
        for (auto& [flag, ptr] : opts) sub->add_option(flag, *ptr)->required();
        sub->add_option("--budget", budget);
        sub->add_option("--out", out_path);
        return sub;
    };
    CLI::App* q_alpha = add_qcomb("alpha", "number of full-rank m x u matrices",
                                  {{"--q", &q}, {"--m", &m}, {"--u", &u}});
    CLI::App* q_gauss = add_qcomb("gaussian", "number of r-dim subspaces of GF(q)^n",
                                  {{"--q", &q}, {"--n", &n}, {"--r", &r}});
    CLI::App* q_nrank = add_qcomb("n-rank", "rank-metric sphere surface",
                                  {{"--q", &q}, {"--m", &m}, {"--n", &n}, {"--u", &u}});
    CLI::App* q_vrank = add_qcomb("v-rank", "rank-metric ball volume",
                                  {{"--q", &q}, {"--m", &m}, {"--n", &n}, {"--t", &t}});
    CLI::App* q_jrank = add_qcomb("j-rank", "rank-metric sphere intersection",
                                  {{"--q", &q}, {"--m", &m}, {"--n", &n}, {"--u", &u},
                                   {"--s", &s}, {"--d", &d}});
    CLI::App* q_nsub = add_qcomb("n-sub", "subspace-metric sphere surface",
                                 {{"--q", &q}, {"--n", &n}, {"--r", &r}, {"--s", &s}, {"--d", &d}});
    CLI::App* q_ninj = add_qcomb("n-inj", "injection-metric sphere surface",
                                 {{"--q", &q}, {"--n", &n}, {"--r", &r}, {"--s", &s}, {"--d", &d}});
    CLI::App* q_jtri = add_qcomb("j-sub-triangle", "collinear subspace sphere intersection",
                                 {{"--q", &q}, {"--n", &n}, {"--u", &u}, {"--s", &s},
                                  {"--a", &a}, {"--b", &b}, {"--c", &c}});
    CLI::App* q_jgen = add_qcomb("j-sub-general", "subspace sphere intersection by enumeration",
                                 {{"--q", &q}, {"--n", &n}, {"--u", &u}, {"--s", &s},
                                  {"--w", &w}, {"--a", &a}, {"--b", &b}, {"--c", &c}});
    CLI::App* q_fexp = add_qcomb("f-exponent", "exponent of the sphere-volume bound",
                                 {{"--n", &n}, {"--r", &r}, {"--s", &s}, {"--t", &t}});
    CLI::App* q_nsbound = add_qcomb("sum-ns-bound", "certified bound on the ball volume",
                                    {{"--q", &q}, {"--n", &n}, {"--r", &r}, {"--s", &s},
                                     {"--t", &t}});
    CLI::App* q_const = add_qcomb("constants", "certified K_q, L_q, H_q", {{"--q", &q}});

    // ---- codes ----
    CLI::App* codes_cmd = app.add_subcommand("codes", "code construction and statistics");
    codes_cmd->require_subcommand(1);
    CLI::App* c_gab = codes_cmd->add_subcommand("gabidulin", "build a linear MRD code");
    c_gab->add_option("--q", q)->required();
    c_gab->add_option("--m", m)->required();
    c_gab->add_option("--n", n)->required();
    c_gab->add_option("--k", k)->required();
    c_gab->add_option("--out", out_path);
    c_gab->add_option("--budget", budget);
    CLI::App* c_info = codes_cmd->add_subcommand("info", "summary of a codebook file");
    c_info->add_option("--code", code_path);
    c_info->add_option("--cdc", cdc_path);
    CLI::App* c_mw = codes_cmd->add_subcommand("mrd-weight", "MRD rank weight distribution");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--m", &m}, {"--n", &n}, {"--d", &d}, {"--r", &r}}) {
        c_mw->add_option(f, *p)->required();
    }
    CLI::App* c_crc = codes_cmd->add_subcommand("crc-bound", "constant-rank cardinality bound");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--m", &m}, {"--n", &n}, {"--d", &d}, {"--r", &r}}) {
        c_crc->add_option(f, *p)->required();
    }
    CLI::App* c_lift = codes_cmd->add_subcommand("lift", "lift a rank code to a CDC");
    c_lift->add_option("--code", code_path)->required();
    c_lift->add_option("--out", out_path);
    CLI::App* c_dist = codes_cmd->add_subcommand("distance-distribution", "per-codeword counts");
    c_dist->add_option("--code", code_path);
    c_dist->add_option("--cdc", cdc_path);
    c_dist->add_option("--sent", sent);
    c_dist->add_option("--out", out_path);
    CLI::App* c_rsd = codes_cmd->add_subcommand("row-space-distribution", "difference row spaces");
    c_rsd->add_option("--code", code_path)->required();
    c_rsd->add_option("--sent", sent);
    c_rsd->add_option("--out", out_path);

    // ---- dep ----
    CLI::App* dep_cmd = app.add_subcommand("dep", "decoder error probabilities");
    dep_cmd->require_subcommand(1);
    auto add_dep = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = dep_cmd->add_subcommand(name, desc);
        sub->add_option("--budget", budget);
        sub->add_option("--out", out_path);
        return sub;
    };
    CLI::App* d_rex = add_dep("rank-exact", "equal row space channel, exact");
    d_rex->add_option("--code", code_path)->required();
    d_rex->add_option("--sent", sent);
    d_rex->add_option("--u", u);
    d_rex->add_option("--uspace", uspace_path);
    d_rex->add_option("--t", t);
    CLI::App* d_rsym = add_dep("rank-symmetric", "rank symmetric channel, exact");
    d_rsym->add_option("--code", code_path)->required();
    d_rsym->add_option("--sent", sent);
    d_rsym->add_option("--u", u)->required();
    d_rsym->add_option("--t", t);
    CLI::App* d_rdmt = add_dep("rank-dmt", "smallest error rank, exact");
    d_rdmt->add_option("--code", code_path)->required();
    d_rdmt->add_option("--sent", sent);
    d_rdmt->add_option("--t", t);
    CLI::App* d_rmax = add_dep("rank-exact-max", "max conditional DEP over codewords and row spaces");
    d_rmax->add_option("--code", code_path)->required();
    d_rmax->add_option("--t", t);
    CLI::App* d_rbound = add_dep("rank-bound", "row-space bound (depends on u only)");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--m", &m}, {"--n", &n}, {"--d", &d}, {"--u", &u}}) {
        d_rbound->add_option(f, *p)->required();
    }
    d_rbound->add_option("--t", t);
    CLI::App* d_rasym = add_dep("rank-asymptotic", "closed-form upper bound");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--m", &m}, {"--n", &n}, {"--d", &d}}) {
        d_rasym->add_option(f, *p)->required();
    }
    CLI::App* d_rmrd = add_dep("rank-mrd", "exact MRD DEP");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--m", &m}, {"--n", &n}, {"--d", &d}, {"--u", &u}}) {
        d_rmrd->add_option(f, *p)->required();
    }
    d_rmrd->add_option("--t", t);
    CLI::App* d_rlow = add_dep("rank-dmt-lower", "closed-form lower bound for MRD codes");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--m", &m}, {"--n", &n}, {"--d", &d}}) {
        d_rlow->add_option(f, *p)->required();
    }
    CLI::App* d_mdom = add_dep("mrd-dominance", "code DEP vs scaled MRD DEP");
    d_mdom->add_option("--code", code_path)->required();
    d_mdom->add_option("--sent", sent);
    d_mdom->add_option("--u", u);
    d_mdom->add_option("--uspace", uspace_path);
    d_mdom->add_option("--t", t);
    CLI::App* d_cs = add_dep("cdc-subspace", "operator channel, subspace decoder, exact");
    d_cs->add_option("--cdc", cdc_path)->required();
    d_cs->add_option("--sent", sent);
    d_cs->add_option("--u", u)->required();
    d_cs->add_option("--v", v)->required();
    CLI::App* d_csb = add_dep("cdc-subspace-bound", "lifting bound, exact rational");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--n", &n}, {"--r", &r}, {"--d", &d}, {"--u", &u}, {"--v", &v}}) {
        d_csb->add_option(f, *p)->required();
    }
    CLI::App* d_csa = add_dep("cdc-subspace-asymptotic", "closed-form bound");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--n", &n}, {"--r", &r}, {"--d", &d}, {"--v", &v}}) {
        d_csa->add_option(f, *p)->required();
    }
    CLI::App* d_csd = add_dep("cdc-subspace-dmt", "smallest decodable distance, exact");
    d_csd->add_option("--cdc", cdc_path)->required();
    d_csd->add_option("--sent", sent);
    d_csd->add_option("--v", v)->required();
    CLI::App* d_csl = add_dep("cdc-subspace-dmt-lower", "closed-form lower bound for liftings");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--n", &n}, {"--r", &r}, {"--d", &d}, {"--v", &v}}) {
        d_csl->add_option(f, *p)->required();
    }
    CLI::App* d_ci = add_dep("cdc-injection", "operator channel, injection decoder, exact");
    d_ci->add_option("--cdc", cdc_path)->required();
    d_ci->add_option("--sent", sent);
    d_ci->add_option("--mu", mu)->required();
    d_ci->add_option("--v", v)->required();
    d_ci->add_option("--t", t);
    CLI::App* d_cib = add_dep("cdc-injection-bound", "closed-form bound");
    for (auto [f, p] : std::vector<std::pair<std::string, long*>>{
             {"--q", &q}, {"--n", &n}, {"--r", &r}, {"--d", &d}, {"--t", &t}, {"--v", &v}}) {
        d_cib->add_option(f, *p)->required();
    }
    CLI::App* d_sweep = add_dep("cdc-sweep", "DEP table over all valid (u,v) or (mu,v)");
    d_sweep->add_option("--cdc", cdc_path)->required();
    d_sweep->add_option("--sent", sent);
    d_sweep->add_option("--decoder", decoder, "subspace | injection");
    d_sweep->add_flag("--csv", csv);
    CLI::App* d_kdom = add_dep("kk-dominance", "lifted code DEP vs scaled KK DEP");
    d_kdom->add_option("--cdc", cdc_path)->required();
    d_kdom->add_option("--sent", sent);
    d_kdom->add_option("--u", u)->required();
    d_kdom->add_option("--v", v)->required();
    CLI::App* d_fig = add_dep("figure1", "decoder-comparison exponent table");
    d_fig->add_option("--q", q);
    d_fig->add_option("--n", n)->required();
    d_fig->add_option("--r", r)->required();
    d_fig->add_option("--d", d)->required();
    d_fig->add_option("--t", t)->required();
    d_fig->add_flag("--csv", csv);

    // ---- figure1 (top level alias) ----
    CLI::App* fig_cmd = app.add_subcommand("figure1", "decoder-comparison exponent table");
    fig_cmd->add_option("--q", q);
    fig_cmd->add_option("--n", n)->required();
    fig_cmd->add_option("--r", r)->required();
    fig_cmd->add_option("--d", d)->required();
    fig_cmd->add_option("--t", t)->required();
    fig_cmd->add_flag("--csv", csv);
    fig_cmd->add_option("--out", out_path);

    // ---- sim ----
    CLI::App* sim_cmd = app.add_subcommand("sim", "seeded Monte Carlo and exhaustive oracles");
    sim_cmd->add_option("--channel", channel, "row-space | rank-symmetric | operator")->required();
    sim_cmd->add_option("--code", code_path);
    sim_cmd->add_option("--cdc", cdc_path);
    sim_cmd->add_option("--sent", sent);
    sim_cmd->add_option("--u", u);
    sim_cmd->add_option("--uspace", uspace_path);
    sim_cmd->add_option("--eps", eps);
    sim_cmd->add_option("--rho", rho);
    sim_cmd->add_option("--decoder", decoder, "subspace | injection");
    sim_cmd->add_option("--trials", trials);
    sim_cmd->add_option("--seed", seed);
    sim_cmd->add_option("--workers", workers);
    sim_cmd->add_option("--t", t);
    bool json_mode = false;
    sim_cmd->add_flag("--json", json_mode, "JSON output (the default)");
    sim_cmd->add_flag("--exhaustive", exhaustive);
    sim_cmd->add_option("--budget", budget);
    sim_cmd->add_option("--out", out_path);

    // ---- selftest ----
    CLI::App* self_cmd = app.add_subcommand("selftest", "desk-scale identity and oracle suite");
    std::string audit_code, audit_cdc;
    self_cmd->add_option("--only", only_filter, "substring filter on check names");
    self_cmd->add_flag("--list", list_only);
    self_cmd->add_option("--code", audit_code, "audit a rank-code file instead");
    self_cmd->add_option("--cdc", audit_cdc, "audit a CDC file instead");

    std::vector<const char*> argv;
    argv.push_back("ranklab");
    for (const std::string& s2 : args) argv.push_back(s2.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    // ---- qcomb dispatch ----
    if (q_alpha->parsed()) {
        json rec = base_record("qcomb alpha", {{"q", q}, {"m", m}, {"u", u}});
        put_value(rec, qcomb::alpha(q, m, u));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_gauss->parsed()) {
        json rec = base_record("qcomb gaussian", {{"q", q}, {"n", n}, {"r", r}});
        put_value(rec, qcomb::gaussian(q, n, r));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_nrank->parsed()) {
        json rec = base_record("qcomb n-rank", {{"q", q}, {"m", m}, {"n", n}, {"u", u}});
        put_value(rec, qcomb::n_rank(q, m, n, u));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_vrank->parsed()) {
        json rec = base_record("qcomb v-rank", {{"q", q}, {"m", m}, {"n", n}, {"t", t}});
        put_value(rec, qcomb::v_rank(q, m, n, t));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_jrank->parsed()) {
        json rec = base_record("qcomb j-rank",
                               {{"q", q}, {"m", m}, {"n", n}, {"u", u}, {"s", s}, {"d", d}});
        put_value(rec, qcomb::j_rank(q, m, n, u, s, d));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_nsub->parsed()) {
        json rec = base_record("qcomb n-sub", {{"q", q}, {"n", n}, {"r", r}, {"s", s}, {"d", d}});
        put_value(rec, qcomb::n_sub(q, n, r, s, d));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_ninj->parsed()) {
        json rec = base_record("qcomb n-inj", {{"q", q}, {"n", n}, {"r", r}, {"s", s}, {"d", d}});
        put_value(rec, qcomb::n_inj(q, n, r, s, d));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_jtri->parsed()) {
        json rec = base_record("qcomb j-sub-triangle", {{"q", q}, {"n", n}, {"u", u}, {"s", s},
                                                        {"a", a}, {"b", b}, {"c", c}});
        put_value(rec, qcomb::j_sub_triangle(q, n, u, s, a, b, c));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_jgen->parsed()) {
        json rec = base_record("qcomb j-sub-general",
                               {{"q", q}, {"n", n}, {"u", u}, {"s", s}, {"w", w},
                                {"a", a}, {"b", b}, {"c", c}});
        put_value(rec, qcomb::j_sub_general(field_from_order(q), n, u, s, w, a, b, c, budget));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_fexp->parsed()) {
        json rec = base_record("qcomb f-exponent", {{"n", n}, {"r", r}, {"s", s}, {"t", t}});
        put_value(rec, qcomb::f_exponent(n, r, s, t));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_nsbound->parsed()) {
        json rec = base_record("qcomb sum-ns-bound",
                               {{"q", q}, {"n", n}, {"r", r}, {"s", s}, {"t", t}});
        put_value(rec, qcomb::sum_ns_bound(q, n, r, s, t), "upper");
        emit_json(out, out_path, rec);
        return 0;
    }
    if (q_const->parsed()) {
        const qcomb::Constants& cst = qcomb::constants(q);
        json rec = base_record("qcomb constants", {{"q", q}});
        rec["K_interval"] = {cst.K.lo, cst.K.hi};
        rec["L_interval"] = {cst.L.lo, cst.L.hi};
        rec["H_rational"] = rat_to_string(cst.H);
        rec["H_float"] = to_double(cst.H);
        emit_json(out, out_path, rec);
        return 0;
    }

    // ---- codes dispatch ----
    if (c_gab->parsed()) {
        RankCode code = codes::gabidulin_build(
            {q, static_cast<int>(m), static_cast<int>(n), static_cast<int>(k)}, budget);
        std::ostringstream text;
        codes::write_rank_code(text, code);
        if (out_path.empty()) {
            out << text.str();
        } else {
            emit(out, out_path, text.str());
            json rec = base_record("codes gabidulin", {{"q", q}, {"m", m}, {"n", n}, {"k", k}});
            rec["size"] = code.codebook.size();
            rec["d"] = code.d;
            rec["t"] = code.t();
            rec["is_mrd"] = code.is_mrd;
            rec["out"] = out_path;
            out << rec.dump(2) << "\n";
        }
        return 0;
    }
    if (c_info->parsed()) {
        json rec;
        if (!code_path.empty()) {
            RankCode code = load_code(code_path);
            rec = base_record("codes info", {{"code", code_path}});
            rec["q"] = code.f->q();
            rec["m"] = code.m;
            rec["n"] = code.n;
            rec["size"] = code.codebook.size();
            rec["d"] = code.d;
            rec["t"] = code.t();
            rec["is_linear"] = code.is_linear;
            rec["is_mrd"] = code.is_mrd;
        } else if (!cdc_path.empty()) {
            Cdc cdc = load_cdc(cdc_path);
            rec = base_record("codes info", {{"cdc", cdc_path}});
            rec["q"] = cdc.f->q();
            rec["n"] = cdc.n;
            rec["r"] = cdc.r;
            rec["size"] = cdc.codebook.size();
            rec["d_injection"] = cdc.d_inj;
            rec["d_subspace"] = 2 * cdc.d_inj;
            rec["t"] = cdc.t();
        } else {
            throw ParameterViolation("codes info needs --code or --cdc");
        }
        emit_json(out, out_path, rec);
        return 0;
    }
    if (c_mw->parsed()) {
        json rec = base_record("codes mrd-weight",
                               {{"q", q}, {"m", m}, {"n", n}, {"d", d}, {"r", r}});
        put_value(rec, codes::mrd_weight_distribution(q, m, n, d, r));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (c_crc->parsed()) {
        json rec = base_record("codes crc-bound",
                               {{"q", q}, {"m", m}, {"n", n}, {"d", d}, {"r", r}});
        put_value(rec, codes::crc_upper_bound(q, m, n, d, r));
        emit_json(out, out_path, rec);
        return 0;
    }
    if (c_lift->parsed()) {
        Cdc cdc = codes::lift_code(load_code(code_path));
        std::ostringstream text;
        codes::write_cdc(text, cdc);
        emit(out, out_path, text.str());
        return 0;
    }
    if (c_dist->parsed()) {
        json rec;
        codes::DistanceDistribution dist;
        if (!code_path.empty()) {
            RankCode code = load_code(code_path);
            dist = codes::distance_distribution(code, sent_word(code, sent));
            rec = base_record("codes distance-distribution", {{"code", code_path}, {"sent", sent}});
        } else if (!cdc_path.empty()) {
            Cdc cdc = load_cdc(cdc_path);
            dist = codes::cdc_distance_distribution(cdc, sent_word(cdc, sent));
            rec = base_record("codes distance-distribution", {{"cdc", cdc_path}, {"sent", sent}});
        } else {
            throw ParameterViolation("distance-distribution needs --code or --cdc");
        }
        json rows = json::array();
        for (size_t ww = 0; ww < dist.a.size(); ++ww) {
            rows.push_back({{"w", ww}, {"count", dist.a[ww].str()}});
        }
        rec["rows"] = rows;
        emit_json(out, out_path, rec);
        return 0;
    }
    if (c_rsd->parsed()) {
        RankCode code = load_code(code_path);
        codes::RowSpaceDistribution rsd =
            codes::row_space_distribution(code, sent_word(code, sent));
        json rec = base_record("codes row-space-distribution", {{"code", code_path}, {"sent", sent}});
        json rows = json::array();
        for (const auto& [W, count] : rsd.counts) {
            rows.push_back({{"dim", W.dim()}, {"basis", W.to_text()}, {"count", count.str()}});
        }
        rec["rows"] = rows;
        emit_json(out, out_path, rec);
        return 0;
    }

    // ---- dep dispatch ----
    if (d_rex->parsed()) {
        RankCode code = load_code(code_path);
        Subspace U = uspace_path.empty() ? canonical_unit_subspace(code.f, code.n,
                                                                   static_cast<int>(u))
                                         : load_subspace(uspace_path);
        int radius = t >= 0 ? static_cast<int>(t) : code.t();
        json rec = base_record("dep rank-exact", {{"code", code_path}, {"sent", sent},
                                                  {"u", U.dim()}, {"t", radius}});
        put_value(rec, dep::dep_rank_exact(code, sent_word(code, sent), U, radius, budget));
        rec["bound_kind"] = "exact";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_rsym->parsed()) {
        RankCode code = load_code(code_path);
        int radius = t >= 0 ? static_cast<int>(t) : code.t();
        json rec = base_record("dep rank-symmetric",
                               {{"code", code_path}, {"sent", sent}, {"u", u}, {"t", radius}});
        put_value(rec, dep::dep_rank_symmetric(code, sent_word(code, sent), u, radius));
        rec["bound_kind"] = "exact";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_rdmt->parsed()) {
        RankCode code = load_code(code_path);
        int radius = t >= 0 ? static_cast<int>(t) : code.t();
        json rec = base_record("dep rank-dmt", {{"code", code_path}, {"sent", sent}, {"t", radius}});
        put_value(rec, dep::dep_rank_dmt(code, sent_word(code, sent), radius));
        rec["bound_kind"] = "exact";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_rmax->parsed()) {
        RankCode code = load_code(code_path);
        int radius = t >= 0 ? static_cast<int>(t) : code.t();
        json rec = base_record("dep rank-exact-max", {{"code", code_path}, {"t", radius}});
        put_value(rec, dep::dep_rank_exact_max(code, radius, budget));
        rec["bound_kind"] = "exact";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_rbound->parsed()) {
        long radius = t >= 0 ? t : (d - 1) / 2;
        json rec = base_record("dep rank-bound", {{"q", q}, {"m", m}, {"n", n}, {"d", d},
                                                  {"u", u}, {"t", radius}});
        put_value(rec, dep::dep_rank_bound(q, m, n, d, u, radius));
        rec["bound_kind"] = "upper";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_rasym->parsed()) {
        json rec = base_record("dep rank-asymptotic", {{"q", q}, {"m", m}, {"n", n}, {"d", d}});
        put_bound(rec, dep::dep_rank_asymptotic(q, m, n, d), "upper");
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_rmrd->parsed()) {
        long radius = t >= 0 ? t : (d - 1) / 2;
        json rec = base_record("dep rank-mrd", {{"q", q}, {"m", m}, {"n", n}, {"d", d},
                                                {"u", u}, {"t", radius}});
        put_value(rec, dep::dep_rank_mrd(q, m, n, d, u, radius));
        rec["bound_kind"] = "exact";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_rlow->parsed()) {
        json rec = base_record("dep rank-dmt-lower", {{"q", q}, {"m", m}, {"n", n}, {"d", d}});
        put_bound(rec, dep::kk_mrd_dmt_lower(q, m, n, d), "lower");
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_mdom->parsed()) {
        RankCode code = load_code(code_path);
        Subspace U = uspace_path.empty() ? canonical_unit_subspace(code.f, code.n,
                                                                   static_cast<int>(u))
                                         : load_subspace(uspace_path);
        int radius = t >= 0 ? static_cast<int>(t) : code.t();
        dep::DominanceResult res =
            dep::mrd_dominance_check(code, sent_word(code, sent), U, radius, budget);
        json rec = base_record("dep mrd-dominance", {{"code", code_path}, {"sent", sent},
                                                     {"u", U.dim()}, {"t", radius}});
        rec["lhs_rational"] = rat_to_string(res.lhs);
        rec["rhs_rational"] = rat_to_string(res.rhs);
        rec["holds"] = res.holds;
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_cs->parsed()) {
        Cdc cdc = load_cdc(cdc_path);
        json rec = base_record("dep cdc-subspace",
                               {{"cdc", cdc_path}, {"sent", sent}, {"u", u}, {"v", v}});
        dep::CdcDep res = dep::dep_cdc_subspace_exact(cdc, sent_word(cdc, sent), u, v, budget);
        put_value(rec, res.value);
        rec["bound_kind"] = "exact";
        rec["no_such_output"] = !res.feasible;
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_csb->parsed()) {
        json rec = base_record("dep cdc-subspace-bound", {{"q", q}, {"n", n}, {"r", r},
                                                          {"d", d}, {"u", u}, {"v", v}});
        put_value(rec, dep::dep_cdc_subspace_lifting_bound(q, n, r, d, u, v, budget));
        rec["bound_kind"] = "upper";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_csa->parsed()) {
        json rec = base_record("dep cdc-subspace-asymptotic",
                               {{"q", q}, {"n", n}, {"r", r}, {"d", d}, {"v", v}});
        put_bound(rec, dep::dep_cdc_subspace_asymptotic(q, n, r, d, v), "upper");
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_csd->parsed()) {
        Cdc cdc = load_cdc(cdc_path);
        json rec = base_record("dep cdc-subspace-dmt", {{"cdc", cdc_path}, {"sent", sent}, {"v", v}});
        put_value(rec, dep::dep_cdc_subspace_dmt(cdc, sent_word(cdc, sent), v));
        rec["bound_kind"] = "exact";
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_csl->parsed()) {
        json rec = base_record("dep cdc-subspace-dmt-lower",
                               {{"q", q}, {"n", n}, {"r", r}, {"d", d}, {"v", v}});
        put_bound(rec, dep::kk_subspace_dmt_lower(q, n, r, d, v), "lower");
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_ci->parsed()) {
        Cdc cdc = load_cdc(cdc_path);
        int radius = t >= 0 ? static_cast<int>(t) : cdc.t();
        json rec = base_record("dep cdc-injection", {{"cdc", cdc_path}, {"sent", sent},
                                                     {"mu", mu}, {"v", v}, {"t", radius}});
        dep::CdcDep res =
            dep::dep_cdc_injection_exact(cdc, sent_word(cdc, sent), mu, v, radius, budget);
        put_value(rec, res.value);
        rec["bound_kind"] = "exact";
        rec["no_such_output"] = !res.feasible;
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_cib->parsed()) {
        json rec = base_record("dep cdc-injection-bound",
                               {{"q", q}, {"n", n}, {"r", r}, {"d", d}, {"t", t}, {"v", v}});
        put_bound(rec, dep::dep_cdc_injection_bound(q, n, r, d, t, v), "upper");
        emit_json(out, out_path, rec);
        return 0;
    }
    if (d_sweep->parsed()) {
        Cdc cdc = load_cdc(cdc_path);
        const Subspace& C = sent_word(cdc, sent);
        const bool injection = decoder == "injection";
        const long dd = cdc.d_inj, rr = cdc.r, tt = cdc.t();
        struct Row {
            long first, v;
            dep::CdcDep val;
        };
        std::vector<Row> rows;
        if (injection) {
            for (long vv = rr - tt; vv <= rr + tt; ++vv) {
                for (long m2 = 0; m2 <= rr; ++m2) {
                    rows.push_back({m2, vv, dep::dep_cdc_injection_exact(
                                                cdc, C, m2, vv, static_cast<int>(tt), budget)});
                }
            }
        } else {
            for (long vv = rr - dd + 1; vv <= rr + dd - 1; ++vv) {
                for (long uu = 0; uu <= 2 * rr; ++uu) {
                    rows.push_back({uu, vv, dep::dep_cdc_subspace_exact(cdc, C, uu, vv, budget)});
                }
            }
        }
        const char* first_name = injection ? "mu" : "u";
        if (csv) {
            std::ostringstream text;
            text << first_name << ",v,value_rational,no_such_output\n";
            for (const Row& row : rows) {
                text << row.first << ',' << row.v << ',' << rat_to_string(row.val.value) << ','
                     << (row.val.feasible ? 0 : 1) << "\n";
            }
            emit(out, out_path, text.str());
        } else {
            json rec = base_record("dep cdc-sweep", {{"cdc", cdc_path}, {"sent", sent},
                                                     {"decoder", injection ? "injection"
                                                                           : "subspace"}});
            json jrows = json::array();
            for (const Row& row : rows) {
                jrows.push_back({{first_name, row.first},
                                 {"v", row.v},
                                 {"value_rational", rat_to_string(row.val.value)},
                                 {"value_float", to_double(row.val.value)},
                                 {"no_such_output", !row.val.feasible}});
            }
            rec["rows"] = jrows;
            emit_json(out, out_path, rec);
        }
        return 0;
    }
    if (d_kdom->parsed()) {
        Cdc cdc = load_cdc(cdc_path);
        dep::DominanceResult res =
            dep::kk_dominance_check(cdc, sent_word(cdc, sent), u, v, budget);
        json rec = base_record("dep kk-dominance",
                               {{"cdc", cdc_path}, {"sent", sent}, {"u", u}, {"v", v}});
        rec["lhs_rational"] = rat_to_string(res.lhs);
        rec["rhs_rational"] = rat_to_string(res.rhs);
        rec["holds"] = res.holds;
        emit_json(out, out_path, rec);
        return 0;
    }

    if (d_fig->parsed() || fig_cmd->parsed()) {
        auto rows = dep::figure1_exponents(q, n, r, d, t);
        json params = {{"q", q}, {"n", n}, {"r", r}, {"d", d}, {"t", t}};
        if (csv) {
            std::ostringstream text;
            text << "v,subspace_exponent,injection_exponent\n";
            for (const auto& row : rows) {
                text << row.v << ',' << fig1_cell(row.subspace_exponent) << ','
                     << fig1_cell(row.injection_exponent) << "\n";
            }
            emit(out, out_path, text.str());
        } else {
            json rec = base_record("figure1", params);
            json jrows = json::array();
            for (const auto& row : rows) {
                json jr = {{"v", row.v}};
                jr["subspace_exponent"] =
                    row.subspace_exponent ? json(rat_to_string(*row.subspace_exponent)) : json();
                jr["injection_exponent"] =
                    row.injection_exponent ? json(rat_to_string(*row.injection_exponent)) : json();
                jr["subspace_exponent_float"] =
                    row.subspace_exponent ? json(to_double(*row.subspace_exponent)) : json();
                jr["injection_exponent_float"] =
                    row.injection_exponent ? json(to_double(*row.injection_exponent)) : json();
                jrows.push_back(jr);
            }
            rec["rows"] = jrows;
            emit_json(out, out_path, rec);
        }
        return 0;
    }

    // ---- sim dispatch ----
    if (sim_cmd->parsed()) {
        sim::SimConfig cfg{seed, trials, workers};
        json rec;
        if (channel == "row-space" || channel == "rank-symmetric") {
            if (code_path.empty()) throw ParameterViolation("sim needs --code for matrix channels");
            RankCode code = load_code(code_path);
            const MatrixGF& C = sent_word(code, sent);
            int radius = t >= 0 ? static_cast<int>(t) : code.t();
            if (channel == "row-space") {
                Subspace U = uspace_path.empty()
                                 ? canonical_unit_subspace(code.f, code.n, static_cast<int>(u))
                                 : load_subspace(uspace_path);
                rec = base_record("sim", {{"channel", channel}, {"code", code_path},
                                          {"sent", sent}, {"u", U.dim()}, {"t", radius},
                                          {"trials", trials}, {"seed", seed},
                                          {"workers", workers}});
                if (exhaustive) {
                    put_value(rec, sim::exhaustive_dep_row_space(code, C, U, radius, budget));
                    rec["exhaustive"] = true;
                    emit_json(out, out_path, rec);
                    return 0;
                }
                sim::SimResult res = sim::estimate_dep_row_space(cfg, code, C, U, radius);
                rec["trials"] = res.trials;
                rec["successes"] = res.successes;
                rec["errors"] = res.errors;
                rec["failures"] = res.failures;
                rec["estimate"] = res.estimate;
                rec["wilson_ci"] = {res.ci_lo, res.ci_hi};
                emit_json(out, out_path, rec);
                return 0;
            }
            rec = base_record("sim", {{"channel", channel}, {"code", code_path}, {"sent", sent},
                                      {"u", u}, {"t", radius}, {"trials", trials},
                                      {"seed", seed}, {"workers", workers}});
            if (exhaustive) {
                put_value(rec, sim::exhaustive_dep_rank_symmetric(code, C, static_cast<int>(u),
                                                                  radius, budget));
                rec["exhaustive"] = true;
                emit_json(out, out_path, rec);
                return 0;
            }
            sim::SimResult res =
                sim::estimate_dep_rank_symmetric(cfg, code, C, static_cast<int>(u), radius);
            rec["trials"] = res.trials;
            rec["successes"] = res.successes;
            rec["errors"] = res.errors;
            rec["failures"] = res.failures;
            rec["estimate"] = res.estimate;
            rec["wilson_ci"] = {res.ci_lo, res.ci_hi};
            emit_json(out, out_path, rec);
            return 0;
        }
        if (channel == "operator") {
            if (cdc_path.empty()) throw ParameterViolation("sim needs --cdc for operator channels");
            Cdc cdc = load_cdc(cdc_path);
            const Subspace& C = sent_word(cdc, sent);
            sim::CdcDecoder dec =
                decoder == "injection" ? sim::CdcDecoder::Injection : sim::CdcDecoder::Subspace;
            rec = base_record("sim", {{"channel", channel}, {"cdc", cdc_path}, {"sent", sent},
                                      {"eps", eps}, {"rho", rho}, {"decoder", decoder},
                                      {"trials", trials}, {"seed", seed}, {"workers", workers}});
            if (exhaustive) {
                long uu = eps + rho, vv = cdc.r + eps - rho;
                sim::CdcOracleResult res =
                    dec == sim::CdcDecoder::Subspace
                        ? sim::exhaustive_dep_cdc_subspace(cdc, C, static_cast<int>(uu),
                                                           static_cast<int>(vv), cdc.d_inj - 1,
                                                           budget)
                        : sim::exhaustive_dep_cdc_injection(
                              cdc, C, static_cast<int>(std::max(eps, rho)),
                              static_cast<int>(vv), cdc.t(), budget);
                put_value(rec, res.value);
                rec["no_such_output"] = !res.feasible;
                rec["exhaustive"] = true;
                emit_json(out, out_path, rec);
                return 0;
            }
            sim::SimResult res = sim::estimate_dep_operator(cfg, cdc, C, static_cast<int>(eps),
                                                            static_cast<int>(rho), dec);
            rec["trials"] = res.trials;
            rec["successes"] = res.successes;
            rec["errors"] = res.errors;
            rec["failures"] = res.failures;
            rec["estimate"] = res.estimate;
            rec["wilson_ci"] = {res.ci_lo, res.ci_hi};
            emit_json(out, out_path, rec);
            return 0;
        }
        throw ParameterViolation("unknown channel: " + channel);
    }

    // ---- selftest dispatch ----
    if (self_cmd->parsed()) {
        if (list_only) {
            for (const std::string& name : selftest::check_names()) out << name << "\n";
            return 0;
        }
        if (!audit_code.empty() || !audit_cdc.empty()) {
            selftest::CheckResult res = selftest::check_code_file(
                audit_code.empty() ? audit_cdc : audit_code, audit_code.empty());
            out << (res.pass ? "[PASS] " : "[FAIL] ") << res.name;
            if (!res.detail.empty()) out << ": " << res.detail;
            out << "\n";
            return res.pass ? 0 : 1;
        }
        bool all_ok = true;
        for (const selftest::CheckResult& res : selftest::run_all(only_filter)) {
            char line[160];
            std::snprintf(line, sizeof(line), "[%s] %-28s (%.2fs)", res.pass ? "PASS" : "FAIL",
                          res.name.c_str(), res.seconds);
            out << line;
            if (!res.detail.empty()) out << " " << res.detail;
            out << "\n";
            all_ok = all_ok && res.pass;
        }
        out << (all_ok ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
        return all_ok ? 0 : 1;
    }

    err << "no subcommand dispatched\n";
    return 2;
}

}  // namespace

}  // namespace ranklab::cli
