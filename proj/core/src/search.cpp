#include "cubesplit/search.hpp"

#include "cubesplit/dp.hpp"
#include "cubesplit/error.hpp"
#include "cubesplit/unitrade_space.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <set>

namespace cubesplit {

namespace {

using Clock = std::chrono::steady_clock;

struct TileSet {
    int n = 0;
    int k = 0;
    int vertices = 0;
    int tile_size = 0;
    std::vector<Mask> directions;
    std::vector<int> dir_of;
    std::vector<Mask> value_of;
    std::vector<std::vector<int>> tile_vertices;
    std::vector<std::vector<int>> vertex_tiles;
    std::vector<std::vector<int>> dir_tiles;
};

TileSet build_tiles(int n, int k)
{
    TileSet ts;
    ts.n = n;
    ts.k = k;
    ts.vertices = 1 << n;
    ts.tile_size = 1 << (n - k + 1);
    ts.directions = colex_subsets(n, k);
    ts.vertex_tiles.resize(static_cast<std::size_t>(ts.vertices));
    ts.dir_tiles.resize(ts.directions.size());
    for (std::size_t d = 0; d < ts.directions.size(); ++d) {
        const Mask dir = ts.directions[d];
        // Representatives put 0 on the smallest fixed coordinate.
        for (Mask v = 0;; v = (v - dir) & dir) {
            if (normalize_phi(dir, v) == v) {
                const int t = static_cast<int>(ts.dir_of.size());
                ts.dir_of.push_back(static_cast<int>(d));
                ts.value_of.push_back(v);
                ts.dir_tiles[d].push_back(t);
                std::vector<int> verts;
                const Face f(n, dir, v);
                const Face g = antipode(f);
                for (int x = 0; x < ts.vertices; ++x)
                    if (f.contains(static_cast<Mask>(x)) || g.contains(static_cast<Mask>(x))) {
                        verts.push_back(x);
                        ts.vertex_tiles[static_cast<std::size_t>(x)].push_back(t);
                    }
                ts.tile_vertices.push_back(std::move(verts));
            }
            if (v == dir)
                break;
        }
    }
    return ts;
}

Splitting solution_splitting(const TileSet& ts, std::vector<int> chosen)
{
    std::sort(chosen.begin(), chosen.end());
    std::vector<Face> faces;
    faces.reserve(2 * chosen.size());
    for (int t : chosen) {
        const Face f(ts.n, ts.directions[static_cast<std::size_t>(ts.dir_of[static_cast<std::size_t>(t)])],
            ts.value_of[static_cast<std::size_t>(t)]);
        faces.push_back(f);
        faces.push_back(antipode(f));
    }
    return Splitting(ts.n, ts.k, std::move(faces));
}

struct Found {
    std::uint64_t node = 0;
    std::vector<int> tiles;
};

struct BranchResult {
    std::vector<Found> found;
    std::uint64_t nodes = 0;
    bool timed_out = false;
};

// Incremental exact cover: alive tiles, per-vertex counts of alive tiles,
// and an undo stack of killed tiles.
class Engine {
public:
    explicit Engine(const TileSet& ts)
        : ts_(ts),
          alive_(ts.dir_of.size(), 1),
          count_(static_cast<std::size_t>(ts.vertices), 0),
          covered_(static_cast<std::size_t>(ts.vertices), 0),
          dir_alive_(ts.directions.size(), 0),
          uncovered_(ts.vertices),
          live_dirs_(static_cast<int>(ts.directions.size()))
    {
        for (std::size_t v = 0; v < count_.size(); ++v)
            count_[v] = static_cast<int>(ts.vertex_tiles[v].size());
        for (std::size_t d = 0; d < ts.directions.size(); ++d)
            dir_alive_[d] = static_cast<int>(ts.dir_tiles[d].size());
    }

    void choose(int t)
    {
        marks_.push_back(killed_.size());
        chosen_.push_back(t);
        for (int v : ts_.tile_vertices[static_cast<std::size_t>(t)]) {
            covered_[static_cast<std::size_t>(v)] = 1;
            --uncovered_;
        }
        for (int v : ts_.tile_vertices[static_cast<std::size_t>(t)])
            for (int u : ts_.vertex_tiles[static_cast<std::size_t>(v)])
                if (alive_[static_cast<std::size_t>(u)])
                    kill(u);
        for (int u : ts_.dir_tiles[static_cast<std::size_t>(ts_.dir_of[static_cast<std::size_t>(t)])])
            if (alive_[static_cast<std::size_t>(u)])
                kill(u);
    }

    void undo()
    {
        const std::size_t mark = marks_.back();
        marks_.pop_back();
        while (killed_.size() > mark) {
            revive(killed_.back());
            killed_.pop_back();
        }
        const int t = chosen_.back();
        chosen_.pop_back();
        for (int v : ts_.tile_vertices[static_cast<std::size_t>(t)]) {
            covered_[static_cast<std::size_t>(v)] = 0;
            ++uncovered_;
        }
    }

    bool solved() const noexcept { return uncovered_ == 0; }

    // Uncovered vertex with fewest alive tiles, or -1 when the node is dead.
    int branch_vertex() const
    {
        const int needed = uncovered_ / ts_.tile_size;
        if (live_dirs_ < needed)
            return -1;
        int best = -1;
        int best_count = std::numeric_limits<int>::max();
        for (int v = 0; v < ts_.vertices; ++v) {
            if (covered_[static_cast<std::size_t>(v)])
                continue;
            const int c = count_[static_cast<std::size_t>(v)];
            if (c < best_count) {
                best = v;
                best_count = c;
                if (c == 0)
                    return -1;
            }
        }
        return best;
    }

    std::vector<int> candidates(int v) const
    {
        std::vector<int> out;
        for (int t : ts_.vertex_tiles[static_cast<std::size_t>(v)])
            if (alive_[static_cast<std::size_t>(t)])
                out.push_back(t);
        return out;
    }

    const std::vector<int>& chosen() const noexcept { return chosen_; }

private:
    void kill(int t)
    {
        alive_[static_cast<std::size_t>(t)] = 0;
        killed_.push_back(t);
        for (int v : ts_.tile_vertices[static_cast<std::size_t>(t)])
            --count_[static_cast<std::size_t>(v)];
        if (--dir_alive_[static_cast<std::size_t>(ts_.dir_of[static_cast<std::size_t>(t)])] == 0)
            --live_dirs_;
    }

    void revive(int t)
    {
        alive_[static_cast<std::size_t>(t)] = 1;
        for (int v : ts_.tile_vertices[static_cast<std::size_t>(t)])
            ++count_[static_cast<std::size_t>(v)];
        if (dir_alive_[static_cast<std::size_t>(ts_.dir_of[static_cast<std::size_t>(t)])]++ == 0)
            ++live_dirs_;
    }

    const TileSet& ts_;
    std::vector<char> alive_;
    std::vector<int> count_;
    std::vector<char> covered_;
    std::vector<int> dir_alive_;
    int uncovered_;
    int live_dirs_;
    std::vector<int> chosen_;
    std::vector<int> killed_;
    std::vector<std::size_t> marks_;
};

struct Limits {
    std::uint64_t node_cap;        // stop once this many nodes were exceeded
    std::size_t solution_cap;      // stop after this many solutions
    Clock::time_point deadline;
    bool has_deadline;
};

class BranchSearch {
public:
    BranchSearch(Engine engine, const Limits& limits) : engine_(std::move(engine)), limits_(limits) {}

    BranchResult run()
    {
        dfs();
        result_.timed_out = timed_out_;
        return std::move(result_);
    }

private:
    bool stopped() const noexcept { return stop_; }

    void dfs()
    {
        ++result_.nodes;
        if (result_.nodes > limits_.node_cap) {
            stop_ = true;
            return;
        }
        if (limits_.has_deadline && (result_.nodes & 0x3ff) == 0 && Clock::now() > limits_.deadline) {
            stop_ = timed_out_ = true;
            return;
        }
        if (engine_.solved()) {
            result_.found.push_back({result_.nodes, engine_.chosen()});
            if (result_.found.size() >= limits_.solution_cap)
                stop_ = true;
            return;
        }
        const int v = engine_.branch_vertex();
        if (v < 0)
            return;
        for (int t : engine_.candidates(v)) {
            engine_.choose(t);
            dfs();
            engine_.undo();
            if (stopped())
                return;
        }
    }

    Engine engine_;
    Limits limits_;
    BranchResult result_;
    bool stop_ = false;
    bool timed_out_ = false;
};

} // namespace

SearchOutcome search_antipodal_splittings(int n, int k, const SearchOptions& opts)
{
    if (n > max_search_ambient)
        throw Error(ErrorCode::AmbientTooLarge, "exhaustive search is limited to n <= " + std::to_string(max_search_ambient));
    if (n < 1 || k < 1 || k > n)
        throw Error(ErrorCode::ParameterOutOfRange, "search needs 1 <= k <= n");

    const auto start = Clock::now();
    const TileSet ts = build_tiles(n, k);
    const std::uint64_t budget = opts.budget_nodes ? opts.budget_nodes : std::numeric_limits<std::uint64_t>::max();
    const std::size_t max_solutions = opts.max_solutions.value_or(std::numeric_limits<std::size_t>::max());

    SearchOutcome out;
    if (max_solutions == 0 || budget == 0) {
        out.exhausted = false;
        return out;
    }

    // The root node is explored here. Its children become independent
    // branches; the reducer below replays them in order so that results do
    // not depend on the worker count.
    Engine root(ts);
    if (opts.symmetry_break)
        root.choose(ts.dir_tiles[0][0]);
    out.nodes_explored = 1;
    if (root.solved()) {
        out.solutions.push_back(solution_splitting(ts, root.chosen()));
        out.exhausted = true;
        return out;
    }
    const int v = root.branch_vertex();
    const std::vector<int> children = v < 0 ? std::vector<int>{} : root.candidates(v);

    Limits limits;
    limits.node_cap = budget - 1;
    limits.solution_cap = max_solutions;
    limits.has_deadline = opts.budget_seconds > 0;
    limits.deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opts.budget_seconds));

    std::vector<BranchResult> results(children.size());
    std::vector<char> ran(children.size(), 0);
    std::atomic<bool> cut{false};
    auto run_child = [&](std::size_t i, const Limits& lim) {
        Engine e = root;
        e.choose(children[i]);
        results[i] = BranchSearch(std::move(e), lim).run();
        ran[i] = 1;
    };

    if (opts.workers <= 1) {
        // Sequential: shrink the caps as we go.
        std::uint64_t used = 1;
        std::size_t sols = 0;
        for (std::size_t i = 0; i < children.size(); ++i) {
            Limits lim = limits;
            lim.node_cap = budget - used;
            lim.solution_cap = max_solutions - sols;
            run_child(i, lim);
            used += std::min(results[i].nodes, lim.node_cap);
            sols += results[i].found.size();
            if (results[i].nodes > lim.node_cap || sols >= max_solutions || results[i].timed_out)
                break;
        }
    }
    else {
        detail::parallel_for(children.size(), opts.workers, [&](std::size_t i) {
            if (cut.load())
                return;
            run_child(i, limits);
            if (results[i].timed_out)
                cut = true;
        });
    }

    out.exhausted = true;
    std::uint64_t used = 1;
    std::vector<const Found*> accepted;
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (!ran[i]) {
            out.exhausted = false;
            break;
        }
        const BranchResult& r = results[i];
        const std::uint64_t remaining = budget - used;
        bool stop = false;
        std::uint64_t consumed = std::min(r.nodes, remaining);
        if (r.nodes > remaining)
            stop = true;
        for (const Found& f : r.found) {
            if (f.node > remaining)
                break;
            accepted.push_back(&f);
            if (accepted.size() >= max_solutions) {
                consumed = f.node;
                stop = true;
                break;
            }
        }
        used += consumed;
        if (r.timed_out)
            stop = true;
        if (stop) {
            out.exhausted = false;
            break;
        }
    }
    out.nodes_explored = used;

    std::set<CanonicalForm> seen;
    for (const Found* f : accepted) {
        Splitting s = solution_splitting(ts, f->tiles);
        if (opts.dedupe && !seen.insert(canonical_splitting(s)).second)
            continue;
        out.solutions.push_back(std::move(s));
    }
    return out;
}

Q8Classification classify_q8_splittings(SearchOptions opts)
{
    opts.symmetry_break = true;
    Q8Classification out;
    out.outcome = search_antipodal_splittings(8, 5, opts);
    const auto e_key = canonical_unitrade(catalog(CatalogName::E16));
    const auto f_key = canonical_unitrade(catalog(CatalogName::F16));
    for (const auto& s : out.outcome.solutions) {
        const Unitrade u = beta(s);
        const auto key = canonical_unitrade(u);
        if (key == e_key)
            ++out.class_e;
        else if (key == f_key)
            ++out.class_f;
        else {
            ++out.other;
            if (out.other_examples.size() < 8)
                out.other_examples.push_back(u);
        }
    }
    return out;
}

namespace {

constexpr int cycle_n = 5;
constexpr Mask cycle_all = 31;

struct CycleWalker {
    std::vector<std::vector<Mask>> cycles;
    std::vector<Mask> path;
    Mask visited = 0;   // bit per vertex of Q^5
    int dir_count[cycle_n] = {};
    Mask dir_edge[cycle_n] = {};   // lower endpoint of the first edge seen

    static Mask lower(Mask u, int dir) { return u & ~(Mask{1} << dir); }
    static Mask antipodal_lower(Mask low, int dir) { return (~low & cycle_all) & ~(Mask{1} << dir); }

    bool edge_allowed(Mask u, int dir) const
    {
        if (dir_count[dir] == 0)
            return true;
        if (dir_count[dir] == 1)
            return lower(u, dir) == antipodal_lower(dir_edge[dir], dir);
        return false;
    }

    void push_edge(Mask u, int dir)
    {
        if (dir_count[dir]++ == 0)
            dir_edge[dir] = lower(u, dir);
    }

    void pop_edge(int dir) { --dir_count[dir]; }

    void extend()
    {
        const Mask start = path.front();
        const Mask cur = path.back();
        for (int dir = 0; dir < cycle_n; ++dir) {
            const Mask next = cur ^ (Mask{1} << dir);
            if (!edge_allowed(cur, dir))
                continue;
            if (next == start) {
                // Closing edge: both orientations are found, keep one.
                if (path.size() < 4 || path[1] > path.back())
                    continue;
                push_edge(cur, dir);
                bool balanced = true;
                for (int c : dir_count)
                    balanced = balanced && (c == 0 || c == 2);
                pop_edge(dir);
                if (balanced)
                    cycles.push_back(path);
                continue;
            }
            if (next <= start || next == cycle_all || (visited >> next & 1))
                continue;
            push_edge(cur, dir);
            path.push_back(next);
            visited |= Mask{1} << next;
            extend();
            visited &= ~(Mask{1} << next);
            path.pop_back();
            pop_edge(dir);
        }
    }
};

} // namespace

CycleReport antipodal_cycle_analysis_q5()
{
    CycleWalker w;
    for (Mask s = 1; s < cycle_all; ++s) {
        w.path = {s};
        w.visited = Mask{1} << s;
        w.extend();
    }
    CycleReport report;
    report.cycles = std::move(w.cycles);

    std::vector<std::uint32_t> sets;
    for (const auto& c : report.cycles) {
        std::uint32_t m = 0;
        for (Mask v : c)
            m |= std::uint32_t{1} << v;
        sets.push_back(m);
    }
    const std::size_t count = sets.size();
    if (count > 0) {
        report.max_disjoint_family = 1;
        report.disjoint_example = {0};
    }
    // 30 available vertices and 10 per cycle, so a family has at most three
    // members; pairs and triples settle the maximum.
    for (std::size_t a = 0; a < count && report.max_disjoint_family < 3; ++a)
        for (std::size_t b = a + 1; b < count && report.max_disjoint_family < 3; ++b) {
            if (sets[a] & sets[b])
                continue;
            if (report.max_disjoint_family < 2) {
                report.max_disjoint_family = 2;
                report.disjoint_example = {a, b};
            }
            for (std::size_t c = b + 1; c < count; ++c)
                if (!((sets[a] | sets[b]) & sets[c])) {
                    report.max_disjoint_family = 3;
                    report.disjoint_example = {a, b, c};
                    break;
                }
        }
    return report;
}

bool report_contains_cycle(const CycleReport& report, const std::vector<std::string>& cycle)
{
    std::vector<Mask> verts;
    for (const auto& word : cycle)
        verts.push_back(parse_vertex(word).bits);
    // Compare as cyclic sequences in either direction.
    const std::size_t len = verts.size();
    for (const auto& c : report.cycles) {
        if (c.size() != len)
            continue;
        for (std::size_t shift = 0; shift < len; ++shift) {
            bool fwd = true;
            bool back = true;
            for (std::size_t i = 0; i < len; ++i) {
                fwd = fwd && c[i] == verts[(shift + i) % len];
                back = back && c[i] == verts[(shift + len - i) % len];
            }
            if (fwd || back)
                return true;
        }
    }
    return false;
}

} // namespace cubesplit
