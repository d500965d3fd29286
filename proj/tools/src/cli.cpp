#include "cubesplit_cli/cli.hpp"

#include "cubesplit/constructions.hpp"
#include "cubesplit/dp.hpp"
#include "cubesplit/error.hpp"
#include "cubesplit/io.hpp"
#include "cubesplit/search.hpp"
#include "cubesplit/unitrade_space.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace cubesplit::cli {

namespace {

const char* bool_word(bool b) { return b ? "true" : "false"; }

unsigned default_workers()
{
    if (const char* env = std::getenv("CUBESPLIT_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        }
        catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::optional<SeedName> parse_seed_name(std::string_view s)
{
    for (auto n : {SeedName::Q4_K3, SeedName::Q8_K5_A, SeedName::Q8_K5_B})
        if (to_string(n) == s)
            return n;
    return std::nullopt;
}

std::string join(const std::vector<std::string>& words, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i)
        out += (i ? sep : "") + words[i];
    return out;
}

// Options shared by the subcommands. Each subcommand binds the ones it uses.
struct Options {
    std::string file;
    std::string out;
    std::string a;
    std::string b;
    std::string name;
    std::string mode = "auto";
    std::string symmetry_break = "on";
    std::string expect;
    std::string phi;
    std::string faces;
    int n = 0;
    int k = 0;
    int weight = 0;
    int t = 0;
    int p = 0;
    std::uint64_t budget_nodes = 0;
    double budget_seconds = 0.0;
    std::size_t max_solutions = 0;
    unsigned workers = 0;
    bool antipodal = false;
    bool classify = false;
    bool dedupe = false;
};

unsigned workers_of(const Options& o) { return o.workers ? o.workers : default_workers(); }

void emit_splitting(const Options& o, const Splitting& s, std::ostream& out)
{
    if (o.out.empty())
        write_faces(out, s);
    else
        write_faces_file(o.out, s);
    out << "RESULT: faces=" << s.size() << " n=" << s.ambient() << " k=" << s.k() << '\n';
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const Splitting s = read_faces_file(o.file);
    VerifyOptions vo;
    vo.workers = workers_of(o);
    if (o.mode == "full")
        vo.mode = VerifyMode::FullEnumeration;
    else if (o.mode == "pairwise")
        vo.mode = VerifyMode::DisjointPlusVolume;
    const VerificationReport r = verify(s, vo);
    out << "faces=" << s.size() << " n=" << s.ambient() << " k=" << s.k()
        << " method=" << (r.method == VerifyMode::FullEnumeration ? "full" : "pairwise") << '\n';
    if (r.witness) {
        const Witness& w = *r.witness;
        switch (w.kind) {
        case Witness::Kind::Uncovered:
            out << "witness: uncovered vertex " << format_vertex(w.vertex) << '\n';
            break;
        case Witness::Kind::DoublyCovered:
            out << "witness: vertex " << format_vertex(w.vertex) << " covered twice\n";
            break;
        case Witness::Kind::ParallelPair:
            out << "witness: parallel non-antipodal faces " << format_face(s.faces()[w.first]) << " and "
                << format_face(s.faces()[w.second]) << '\n';
            break;
        }
    }
    out << "RESULT: splitting=" << bool_word(r.is_exact_splitting) << " antipodal=" << bool_word(r.is_antipodal) << '\n';
    if (!r.is_exact_splitting || (o.antipodal && !r.is_antipodal))
        return refuted;
    return ok;
}

int cmd_beta(const Options& o, std::ostream& out)
{
    const Unitrade u = beta(read_faces_file(o.file));
    if (o.out.empty())
        write_unitrade(out, u);
    else {
        std::ofstream f(o.out);
        write_unitrade(f, u);
    }
    const auto check = is_unitrade(u);
    const auto names = describe_unitrade(u);
    out << "RESULT: blocks=" << u.size() << " unitrade=" << bool_word(check.valid)
        << " class=" << (names.empty() ? "unnamed" : join(names, ",")) << '\n';
    return check.valid ? ok : refuted;
}

int cmd_unitrade_check(const Options& o, std::ostream& out)
{
    Unitrade u;
    if (!o.name.empty()) {
        auto name = parse_catalog_name(o.name);
        if (!name)
            throw Error(ErrorCode::ParameterOutOfRange, "unknown unitrade name '" + o.name + "'");
        u = catalog(*name, o.k ? o.k : 5);
    }
    else
        u = read_unitrade_file(o.file);
    const auto check = is_unitrade(u);
    if (check.violating)
        out << "violating subset: {" << format_block(*check.violating) << "}\n";
    const auto names = check.valid ? describe_unitrade(u) : std::vector<std::string>{};
    out << "RESULT: unitrade=" << bool_word(check.valid) << " simple=" << bool_word(check.simple)
        << " blocks=" << u.size() << " support=" << support_elements(u).size()
        << " class=" << (names.empty() ? "unnamed" : join(names, ",")) << '\n';
    return check.valid ? ok : refuted;
}

int cmd_classify(const Options& o, std::ostream& out)
{
    if (o.weight < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "weight must be non-negative");
    const auto report = enumerate_weight(o.n, o.k, static_cast<std::size_t>(o.weight), workers_of(o));
    for (std::size_t i = 0; i < report.classes.size(); ++i) {
        const auto& c = report.classes[i];
        out << "class " << i << ": elements=" << c.size << " support=" << c.support_size
            << " names=" << (c.names.empty() ? "unnamed" : join(c.names, ",")) << '\n';
        out << "  blocks:";
        for (Block b : c.representative.blocks())
            out << " {" << format_block(b) << '}';
        out << '\n';
    }
    out << "RESULT: n=" << report.n << " k=" << report.k << " weight=" << report.weight
        << " dimension=" << report.dimension << " elements=" << report.total << " classes=" << report.classes.size() << '\n';
    return ok;
}

int cmd_dp_decide(const Options& o, std::ostream& out)
{
    Hypergraph h;
    if (!o.faces.empty()) {
        const Splitting s = read_faces_file(o.faces);
        std::vector<FacePair> pairs;
        // Any list of antipodal pairs works here, not only splittings.
        for (std::size_t i = 0; i + 1 < s.size(); i += 2)
            pairs.emplace_back(s.faces()[i], s.faces()[i + 1]);
        if (s.size() % 2 != 0)
            throw Error(ErrorCode::NotAntipodalPair, "odd number of faces");
        h = covering_to_hypergraph(pairs, s.ambient()).first;
    }
    else
        h = read_hypergraph_file(o.file);

    if (!o.phi.empty()) {
        std::ifstream in(o.phi);
        if (!in)
            throw Error(ErrorCode::ParseError, "cannot open '" + o.phi + "'");
        const PhiAssignment phi = read_phi(in, h);
        const auto pairs = hypergraph_to_faces(h, phi);
        std::vector<Face> faces;
        for (const auto& [x, y] : pairs) {
            faces.push_back(x);
            faces.push_back(y);
        }
        const auto f = find_uncovered(h.vertex_count(), faces);
        if (f)
            out << "avoiding coloring: " << format_vertex(Vertex{h.vertex_count(), *f}) << '\n';
        out << "RESULT: avoidable=" << bool_word(f.has_value()) << '\n';
        return f ? ok : refuted;
    }

    DecideOptions d;
    d.budget = o.budget_nodes;
    const auto decision = decide_2dp(h, d);
    const auto proper = is_proper_2colorable(h);
    if (decision.bad_phi) {
        out << "bad Phi:\n";
        write_phi(out, h, *decision.bad_phi);
        out << "covering faces:\n";
        for (const auto& [x, y] : decision.covering)
            out << format_face(x) << ' ' << format_face(y) << '\n';
        if (!o.out.empty()) {
            std::ofstream f(o.out);
            write_phi(f, h, *decision.bad_phi);
        }
    }
    if (decision.work_bound_hit) {
        out << "RESULT: verdict=unknown work_bound_hit=true phi_checked=" << decision.phi_checked << '\n';
        return usage_error;
    }
    out << "RESULT: colorable=" << bool_word(decision.colorable) << " proper=" << bool_word(proper.colorable)
        << " edges=" << h.edges().size() << " phi_checked=" << decision.phi_checked << '\n';
    if (o.expect == "colorable")
        return decision.colorable ? ok : refuted;
    if (o.expect == "non-colorable")
        return decision.colorable ? refuted : ok;
    return ok;
}

int cmd_search(const Options& o, std::ostream& out)
{
    SearchOptions so;
    so.symmetry_break = o.symmetry_break == "on";
    so.budget_nodes = o.budget_nodes;
    so.budget_seconds = o.budget_seconds;
    so.workers = workers_of(o);
    so.dedupe = o.dedupe;
    if (o.max_solutions)
        so.max_solutions = o.max_solutions;

    auto write_solutions = [&](const SearchOutcome& r) {
        if (o.out.empty())
            return;
        std::filesystem::create_directories(o.out);
        for (std::size_t i = 0; i < r.solutions.size(); ++i) {
            std::ostringstream name;
            name << "solution_" << std::setw(6) << std::setfill('0') << i << ".faces";
            write_faces_file((std::filesystem::path(o.out) / name.str()).string(), r.solutions[i]);
        }
    };

    if (o.classify) {
        if (o.n != 8 || o.k != 5)
            throw Error(ErrorCode::ParameterOutOfRange, "--classify is defined for --n 8 --k 5");
        const auto c = classify_q8_splittings(so);
        write_solutions(c.outcome);
        for (const auto& u : c.other_examples) {
            out << "outside E/F:";
            for (Block b : u.blocks())
                out << " {" << format_block(b) << '}';
            out << '\n';
        }
        out << "RESULT: solutions=" << c.outcome.solutions.size() << " nodes=" << c.outcome.nodes_explored
            << " exhausted=" << bool_word(c.outcome.exhausted) << " E=" << c.class_e << " F=" << c.class_f
            << " other=" << c.other << '\n';
        return c.other == 0 ? ok : refuted;
    }

    const auto r = search_antipodal_splittings(o.n, o.k, so);
    write_solutions(r);
    out << "RESULT: solutions=" << r.solutions.size() << " nodes=" << r.nodes_explored
        << " exhausted=" << bool_word(r.exhausted) << '\n';
    return ok;
}

int cmd_cycles(std::ostream& out)
{
    const auto report = antipodal_cycle_analysis_q5();
    for (std::size_t idx : report.disjoint_example) {
        out << "cycle:";
        for (Mask v : report.cycles[idx])
            out << ' ' << format_vertex(Vertex{5, v});
        out << '\n';
    }
    out << "RESULT: cycles=" << report.cycles.size() << " max_disjoint=" << report.max_disjoint_family << '\n';
    return report.max_disjoint_family < 3 ? ok : refuted;
}

const char* formats_text = R"(
Formats:
  face file        one face per line over {0,1,*}; '#' comments; '&' and blanks
                   ignored; optional header line "n=<int> k=<int>"
  unitrade file    header "n=<int> k=<int>", then one block per line as
                   space separated elements in 1..n
  hypergraph file  same layout as a unitrade file, one edge per line
  phi file         "<edge-index>: <bits over the edge's vertices in sorted order>"

Exit codes: 0 success, 1 property refuted, 2 usage or resource error.
Every command prints a summary line starting with "RESULT:".
Worker count defaults to CUBESPLIT_WORKERS, then to the hardware concurrency.
)";

struct Built {
    std::unique_ptr<CLI::App> app;
    std::string command;
    std::string construct_kind;
};

void build(Built& b, Options& o)
{
    b.app = std::make_unique<CLI::App>("cubesplit: antipodal splittings of the Boolean cube, unitrades and 2-DP-colorability", "cubesplit");
    CLI::App& app = *b.app;
    app.set_version_flag("--version", std::string("cubesplit ") + version);
    app.require_subcommand(1);
    app.footer(formats_text);

    auto workers = [&](CLI::App* c) { c->add_option("--workers", o.workers, "worker threads"); };

    auto* v = app.add_subcommand("verify", "check that a face file is a splitting");
    v->add_option("--file", o.file, "face file")->required();
    v->add_option("--mode", o.mode, "full, pairwise or auto")->check(CLI::IsMember({"full", "pairwise", "auto"}));
    v->add_flag("--antipodal", o.antipodal, "also require antipodality");
    workers(v);

    auto* c = app.add_subcommand("construct", "build a splitting");
    c->require_subcommand(1);
    auto* cs = c->add_subcommand("seed", "one of the stored seeds");
    cs->add_option("--name", o.name, "q4_k3, q8_k5_a or q8_k5_b")->required()->check(CLI::IsMember({"q4_k3", "q8_k5_a", "q8_k5_b"}));
    auto* cp = c->add_subcommand("pad", "append a free coordinate");
    cp->add_option("--file", o.file, "face file")->required();
    auto* cx = c->add_subcommand("product", "product of two antipodal splittings");
    cx->add_option("--a", o.a, "face file of the outer factor")->required();
    cx->add_option("--b", o.b, "face file of the inner factor")->required();
    auto* cw = c->add_subcommand("power", "Q4 factors then Q8 factors");
    cw->add_option("--t", o.t, "number of q4_k3 factors")->required();
    cw->add_option("--p", o.p, "number of q8_k5_a factors")->required();
    auto* ct = c->add_subcommand("two-per-direction", "splitting with two faces per used direction");
    ct->add_option("--n", o.n, "dimension")->required();
    ct->add_option("--k", o.k, "codimension")->required();
    for (auto* sub : {cs, cp, cx, cw, ct})
        sub->add_option("--out", o.out, "output face file");

    auto* be = app.add_subcommand("beta", "unitrade of fixed positions of an antipodal splitting");
    be->add_option("--file", o.file, "face file")->required();
    be->add_option("--out", o.out, "output unitrade file");

    auto* uc = app.add_subcommand("unitrade-check", "check the unitrade condition and name the class");
    auto* uf = uc->add_option("--file", o.file, "unitrade file");
    auto* un = uc->add_option("--name", o.name, "w5, r5, p9, s12, e16, f16, h1, h2, h3");
    uc->add_option("--k", o.k, "block size for --name w5/r5 (default 5)");
    uf->excludes(un);

    auto* cl = app.add_subcommand("classify", "classes of a given weight in the unitrade space");
    cl->add_option("--n", o.n, "ground set size")->required();
    cl->add_option("--k", o.k, "block size")->required();
    cl->add_option("--weight", o.weight, "number of blocks")->required();
    workers(cl);

    auto* dp = app.add_subcommand("dp-decide", "decide 2-DP-colorability of a hypergraph");
    auto* df = dp->add_option("--file", o.file, "hypergraph file");
    auto* dfa = dp->add_option("--faces", o.faces, "face file read as consecutive antipodal pairs");
    df->excludes(dfa);
    dp->add_option("--phi", o.phi, "only test this Phi file");
    dp->add_option("--budget-nodes", o.budget_nodes, "work limit of the covering tests");
    dp->add_option("--expect", o.expect, "colorable or non-colorable")->check(CLI::IsMember({"colorable", "non-colorable"}));
    dp->add_option("--out", o.out, "write the bad Phi here");

    auto* se = app.add_subcommand("search", "exhaustive search for antipodal splittings");
    se->add_option("--n", o.n, "dimension (at most 10)")->required();
    se->add_option("--k", o.k, "codimension")->required();
    se->add_option("--symmetry-break", o.symmetry_break, "on or off")->check(CLI::IsMember({"on", "off"}));
    se->add_option("--budget-nodes", o.budget_nodes, "node limit (0 = none)");
    se->add_option("--budget-seconds", o.budget_seconds, "time limit (0 = none)");
    se->add_option("--max-solutions", o.max_solutions, "stop after this many solutions (0 = all)");
    se->add_flag("--dedupe", o.dedupe, "one solution per isometry class");
    se->add_flag("--classify", o.classify, "tally unitrade classes (n=8, k=5)");
    se->add_option("--out", o.out, "directory for one face file per solution");
    workers(se);

    app.add_subcommand("cycles", "antipodal 10-cycles of Q5 and their disjoint families");
}

int dispatch(const CLI::App& app, const Options& o, std::ostream& out)
{
    if (app.got_subcommand("verify"))
        return cmd_verify(o, out);
    if (const auto* c = app.get_subcommand_no_throw("construct"); c && c->parsed()) {
        if (c->got_subcommand("seed"))
            return emit_splitting(o, seed(*parse_seed_name(o.name)), out), ok;
        if (c->got_subcommand("pad"))
            return emit_splitting(o, pad(read_faces_file(o.file)), out), ok;
        if (c->got_subcommand("product"))
            return emit_splitting(o, product(read_faces_file(o.a), read_faces_file(o.b)), out), ok;
        if (c->got_subcommand("power"))
            return emit_splitting(o, power_splitting(o.t, o.p), out), ok;
        return emit_splitting(o, two_per_direction(o.n, o.k), out), ok;
    }
    if (app.got_subcommand("beta"))
        return cmd_beta(o, out);
    if (app.got_subcommand("unitrade-check"))
        return cmd_unitrade_check(o, out);
    if (app.got_subcommand("classify"))
        return cmd_classify(o, out);
    if (app.got_subcommand("dp-decide"))
        return cmd_dp_decide(o, out);
    if (app.got_subcommand("search"))
        return cmd_search(o, out);
    return cmd_cycles(out);
}

} // namespace

std::string commands_manifest()
{
    Options o;
    Built b;
    build(b, o);
    std::string text = b.app->help("", CLI::AppFormatMode::All);
    return std::string("cubesplit ") + version + "\n" + text;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    Built b;
    build(b, o);
    CLI::App& app = *b.app;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        const CLI::App* sub = &app;
        for (bool deeper = true; deeper;) {
            deeper = false;
            for (const CLI::App* c : sub->get_subcommands()) {
                sub = c;
                deeper = true;
                break;
            }
        }
        if (sub == &app)
            out << commands_manifest();
        else
            out << sub->help();
        return ok;
    }
    catch (const CLI::CallForAllHelp&) {
        out << commands_manifest();
        return ok;
    }
    catch (const CLI::CallForVersion&) {
        out << "cubesplit " << version << '\n';
        return ok;
    }
    catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\nrun 'cubesplit --help' for the command list\n";
        return usage_error;
    }
    if (app.got_subcommand("unitrade-check") && o.file.empty() && o.name.empty()) {
        err << "usage error: unitrade-check needs --file or --name\n";
        return usage_error;
    }
    if (app.got_subcommand("dp-decide") && o.file.empty() && o.faces.empty()) {
        err << "usage error: dp-decide needs --file or --faces\n";
        return usage_error;
    }
    try {
        return dispatch(app, o, out);
    }
    catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::InputNotAntipodalSplitting ? refuted : usage_error;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

} // namespace cubesplit::cli
