#include "cubesplit/unitrade.hpp"

#include "cubesplit/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>

namespace cubesplit {

Block make_block(std::initializer_list<int> elements)
{
    Block b = 0;
    for (int e : elements) {
        if (e < 1 || e > max_ambient)
            throw Error(ErrorCode::OutOfRange, "block element " + std::to_string(e));
        b |= coordinate_bit(e);
    }
    return b;
}

std::vector<int> block_elements(Block b)
{
    std::vector<int> out;
    while (b) {
        out.push_back(std::countr_zero(b) + 1);
        b &= b - 1;
    }
    return out;
}

std::string format_block(Block b)
{
    std::string out;
    for (int e : block_elements(b)) {
        if (!out.empty())
            out.push_back(' ');
        out += std::to_string(e);
    }
    return out;
}

Unitrade::Unitrade(int ground_n, int k, std::vector<Block> blocks) : n_(ground_n), k_(k), blocks_(std::move(blocks))
{
    if (ground_n < 0 || ground_n > max_ambient)
        throw Error(ErrorCode::OutOfRange, "ground set size " + std::to_string(ground_n));
    if (k < 0 || k > ground_n)
        throw Error(ErrorCode::ParameterOutOfRange, "block size " + std::to_string(k));
    for (Block b : blocks_) {
        if (std::popcount(b) != k)
            throw Error(ErrorCode::MixedBlockSize, "block {" + format_block(b) + "} is not a " + std::to_string(k) + "-set");
        if (b & ~low_mask(ground_n))
            throw Error(ErrorCode::OutOfRange, "block {" + format_block(b) + "} outside the ground set");
    }
    std::sort(blocks_.begin(), blocks_.end());
    if (std::adjacent_find(blocks_.begin(), blocks_.end()) != blocks_.end())
        throw Error(ErrorCode::ParameterOutOfRange, "repeated block");
}

bool Unitrade::contains(Block b) const { return std::binary_search(blocks_.begin(), blocks_.end(), b); }

UnitradeCheck is_unitrade(const Unitrade& u)
{
    std::vector<Block> shadows;
    shadows.reserve(u.size() * static_cast<std::size_t>(u.k()));
    for (Block b : u.blocks())
        for (Block rest = b; rest; rest &= rest - 1)
            shadows.push_back(b & ~(rest & (~rest + 1)));
    std::sort(shadows.begin(), shadows.end());

    UnitradeCheck check;
    check.valid = true;
    check.simple = true;
    for (std::size_t lo = 0; lo < shadows.size();) {
        std::size_t hi = lo;
        while (hi < shadows.size() && shadows[hi] == shadows[lo])
            ++hi;
        const std::size_t count = hi - lo;
        if (count % 2 != 0 && check.valid) {
            check.valid = false;
            check.violating = shadows[lo];
        }
        if (count != 2)
            check.simple = false;
        lo = hi;
    }
    check.simple = check.simple && check.valid;
    return check;
}

Unitrade symmetric_difference(const Unitrade& a, const Unitrade& b)
{
    if (a.k() != b.k() && !a.empty() && !b.empty())
        throw Error(ErrorCode::MixedBlockSize,
            "unitrades with block sizes " + std::to_string(a.k()) + " and " + std::to_string(b.k()));
    std::vector<Block> out;
    std::set_symmetric_difference(a.blocks().begin(), a.blocks().end(), b.blocks().begin(), b.blocks().end(),
        std::back_inserter(out));
    const int k = a.empty() ? b.k() : a.k();
    return Unitrade(std::max(a.ground(), b.ground()), k, std::move(out));
}

Unitrade derived(const Unitrade& u, int a)
{
    if (a < 1 || a > u.ground())
        throw Error(ErrorCode::OutOfRange, "element " + std::to_string(a) + " outside the ground set");
    if (u.k() == 0)
        throw Error(ErrorCode::ParameterOutOfRange, "derived unitrade of 0-blocks");
    const Block bit = coordinate_bit(a);
    std::vector<Block> out;
    for (Block b : u.blocks())
        if (b & bit)
            out.push_back(b & ~bit);
    return Unitrade(u.ground(), u.k() - 1, std::move(out));
}

Mask support(const Unitrade& u)
{
    Mask m = 0;
    for (Block b : u.blocks())
        m |= b;
    return m;
}

std::vector<int> support_elements(const Unitrade& u) { return block_elements(support(u)); }

std::vector<int> element_degrees(const Unitrade& u)
{
    std::vector<int> deg(static_cast<std::size_t>(u.ground()) + 1, 0);
    for (Block b : u.blocks())
        for (int e : block_elements(b))
            ++deg[static_cast<std::size_t>(e)];
    return deg;
}

namespace {

Block map_block(Block b, const std::vector<int>& mapping)
{
    Block out = 0;
    while (b) {
        const int e = std::countr_zero(b) + 1;
        out |= coordinate_bit(mapping[static_cast<std::size_t>(e)]);
        b &= b - 1;
    }
    return out;
}

// Pair degrees over the support, indexed by position in `elems`.
std::vector<std::vector<int>> pair_degrees(const Unitrade& u, const std::vector<int>& elems)
{
    const std::size_t s = elems.size();
    std::vector<std::vector<int>> pd(s, std::vector<int>(s, 0));
    for (Block b : u.blocks())
        for (std::size_t i = 0; i < s; ++i)
            if (b & coordinate_bit(elems[i]))
                for (std::size_t j = 0; j < s; ++j)
                    if (b & coordinate_bit(elems[j]))
                        ++pd[i][j];
    return pd;
}

std::vector<int> refine_elements(const std::vector<std::vector<int>>& pd)
{
    const std::size_t s = pd.size();
    auto relabel = [](const std::vector<std::vector<int>>& sigs) {
        auto sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(sigs.size());
        for (std::size_t i = 0; i < sigs.size(); ++i)
            out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
        return std::pair{out, sorted.size()};
    };
    std::vector<std::vector<int>> sigs(s);
    for (std::size_t i = 0; i < s; ++i)
        sigs[i] = {pd[i][i]};
    auto [color, classes] = relabel(sigs);
    for (;;) {
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<std::pair<int, int>> around;
            for (std::size_t j = 0; j < s; ++j)
                if (j != i)
                    around.emplace_back(color[j], pd[i][j]);
            std::sort(around.begin(), around.end());
            sigs[i].assign(1, color[i]);
            for (auto [c, m] : around) {
                sigs[i].push_back(c);
                sigs[i].push_back(m);
            }
        }
        auto [next, count] = relabel(sigs);
        color = std::move(next);
        if (count == classes)
            break;
        classes = count;
    }
    return color;
}

void check_support_size(std::size_t s)
{
    if (s > static_cast<std::size_t>(max_equivalence_support))
        throw Error(ErrorCode::SupportTooLarge,
            "support of " + std::to_string(s) + " elements exceeds " + std::to_string(max_equivalence_support));
}

struct InjectionSearch {
    const Unitrade& a;
    const Unitrade& b;
    std::vector<int> ea; // support of a, search order
    std::vector<int> eb;
    std::vector<std::vector<int>> pda;
    std::vector<std::vector<int>> pdb;
    std::vector<int> image;   // position in ea -> position in eb
    Mask used_b = 0;          // positions in eb already taken
    std::vector<int> label;   // element of a -> element of b (0 = unmapped)
    Mask mapped_a = 0;

    bool blocks_consistent(int newly) const
    {
        const Block bit = coordinate_bit(newly);
        for (Block blk : a.blocks()) {
            if (!(blk & bit) || (blk & ~mapped_a))
                continue;
            if (!b.contains(map_block(blk, label)))
                return false;
        }
        return true;
    }

    bool descend(std::size_t depth)
    {
        if (depth == ea.size())
            return true;
        for (std::size_t y = 0; y < eb.size(); ++y) {
            if (used_b >> y & 1)
                continue;
            if (pda[depth][depth] != pdb[y][y])
                continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d)
                ok = pda[depth][d] == pdb[y][static_cast<std::size_t>(image[d])];
            if (!ok)
                continue;
            image[depth] = static_cast<int>(y);
            used_b |= Mask{1} << y;
            label[static_cast<std::size_t>(ea[depth])] = eb[y];
            mapped_a |= coordinate_bit(ea[depth]);
            if (blocks_consistent(ea[depth]) && descend(depth + 1))
                return true;
            mapped_a &= ~coordinate_bit(ea[depth]);
            label[static_cast<std::size_t>(ea[depth])] = 0;
            used_b &= ~(Mask{1} << y);
        }
        return false;
    }
};

// Sorted rows, sorted: invariant under relabelling.
std::vector<std::vector<int>> row_multiset(std::vector<std::vector<int>> pd)
{
    for (auto& r : pd)
        std::sort(r.begin(), r.end());
    std::sort(pd.begin(), pd.end());
    return pd;
}

} // namespace

Unitrade relabel(const Unitrade& u, const std::vector<int>& mapping)
{
    int ground = 0;
    std::vector<Block> out;
    out.reserve(u.size());
    for (Block b : u.blocks()) {
        for (int e : block_elements(b)) {
            if (static_cast<std::size_t>(e) >= mapping.size() || mapping[static_cast<std::size_t>(e)] < 1)
                throw Error(ErrorCode::OutOfRange, "relabelling does not cover element " + std::to_string(e));
            ground = std::max(ground, mapping[static_cast<std::size_t>(e)]);
        }
        out.push_back(map_block(b, mapping));
    }
    return Unitrade(std::max(ground, u.ground()), u.k(), std::move(out));
}

std::optional<Injection> are_equivalent(const Unitrade& a, const Unitrade& b)
{
    const auto sa = support_elements(a);
    const auto sb = support_elements(b);
    check_support_size(sa.size());
    check_support_size(sb.size());
    if (a.size() != b.size() || sa.size() != sb.size() || (a.k() != b.k() && !a.empty()))
        return std::nullopt;

    InjectionSearch search{a, b, sa, sb, {}, {}, {}, 0, {}, 0};
    // Rarest degrees first.
    {
        auto pd = pair_degrees(a, sa);
        std::map<int, int> freq;
        for (std::size_t i = 0; i < sa.size(); ++i)
            ++freq[pd[i][i]];
        std::vector<std::size_t> order(sa.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return std::pair{freq[pd[x][x]], pd[x][x]} < std::pair{freq[pd[y][y]], pd[y][y]};
        });
        std::vector<int> reordered;
        for (std::size_t i : order)
            reordered.push_back(sa[i]);
        search.ea = std::move(reordered);
    }
    search.pda = pair_degrees(a, search.ea);
    search.pdb = pair_degrees(b, sb);
    if (row_multiset(search.pda) != row_multiset(search.pdb))
        return std::nullopt;
    search.image.assign(sa.size(), -1);
    search.label.assign(static_cast<std::size_t>(std::max(a.ground(), 1)) + 1, 0);
    if (!search.descend(0))
        return std::nullopt;

    Injection out;
    for (int e : sa)
        out.emplace_back(e, search.label[static_cast<std::size_t>(e)]);
    return out;
}

std::vector<std::uint64_t> canonical_unitrade(const Unitrade& u)
{
    const auto elems = support_elements(u);
    check_support_size(elems.size());
    const auto pd = pair_degrees(u, elems);
    const auto color = refine_elements(pd);

    std::vector<std::vector<std::size_t>> cells;
    {
        std::vector<std::size_t> order(elems.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return color[x] < color[y]; });
        for (std::size_t i : order) {
            if (cells.empty() || color[cells.back().front()] != color[i])
                cells.emplace_back();
            cells.back().push_back(i);
        }
    }

    std::vector<int> mapping(static_cast<std::size_t>(u.ground()) + 1, 0);
    std::vector<Block> image(u.size());
    std::vector<Block> best;
    for (;;) {
        int next_label = 1;
        for (const auto& cell : cells)
            for (std::size_t i : cell)
                mapping[static_cast<std::size_t>(elems[i])] = next_label++;
        for (std::size_t i = 0; i < u.size(); ++i)
            image[i] = map_block(u.blocks()[i], mapping);
        std::sort(image.begin(), image.end());
        if (best.empty() || image < best)
            best = image;
        std::size_t c = 0;
        for (; c < cells.size(); ++c)
            if (std::next_permutation(cells[c].begin(), cells[c].end()))
                break;
        if (c == cells.size())
            break;
    }

    std::vector<std::uint64_t> out;
    out.reserve(best.size() + 2);
    out.push_back(static_cast<std::uint64_t>(u.k()));
    out.push_back(elems.size());
    out.insert(out.end(), best.begin(), best.end());
    return out;
}

// ---------------------------------------------------------------------------
// catalog

namespace {

using BlockList = std::initializer_list<std::initializer_list<int>>;

Unitrade from_lists(int k, BlockList lists)
{
    std::vector<Block> blocks;
    int ground = 0;
    for (auto l : lists) {
        blocks.push_back(make_block(l));
        for (int e : l)
            ground = std::max(ground, e);
    }
    return Unitrade(ground, k, std::move(blocks));
}

const BlockList r5_blocks = {
    {2, 3, 4, 5, 6}, {1, 3, 4, 5, 6}, {1, 2, 4, 5, 6}, {1, 2, 3, 5, 6}, {1, 2, 3, 4, 6},
    {2, 3, 4, 5, 7}, {1, 3, 4, 5, 7}, {1, 2, 4, 5, 7}, {1, 2, 3, 5, 7}, {1, 2, 3, 4, 7},
};

Unitrade with_r5(BlockList w_part)
{
    Unitrade w = from_lists(5, w_part);
    Unitrade r = from_lists(5, r5_blocks);
    std::vector<Block> blocks = w.blocks();
    blocks.insert(blocks.end(), r.blocks().begin(), r.blocks().end());
    return Unitrade(std::max(w.ground(), r.ground()), 5, std::move(blocks));
}

} // namespace

std::string_view to_string(CatalogName name) noexcept
{
    switch (name) {
    case CatalogName::W: return "W";
    case CatalogName::R5: return "R5";
    case CatalogName::P9: return "P9";
    case CatalogName::S12: return "S12";
    case CatalogName::E16: return "E16";
    case CatalogName::F16: return "F16";
    case CatalogName::H1: return "H1";
    case CatalogName::H2: return "H2";
    case CatalogName::H3: return "H3";
    }
    return "?";
}

std::optional<CatalogName> parse_catalog_name(std::string_view text)
{
    static constexpr std::array<std::pair<std::string_view, CatalogName>, 9> names{{
        {"w5", CatalogName::W}, {"r5", CatalogName::R5}, {"p9", CatalogName::P9},
        {"s12", CatalogName::S12}, {"e16", CatalogName::E16}, {"f16", CatalogName::F16},
        {"h1", CatalogName::H1}, {"h2", CatalogName::H2}, {"h3", CatalogName::H3},
    }};
    for (auto [s, n] : names)
        if (s == text)
            return n;
    return std::nullopt;
}

Unitrade w_unitrade(int k)
{
    if (k < 1 || k + 1 > max_ambient)
        throw Error(ErrorCode::ParameterOutOfRange, "W_k needs 1 <= k <= 62");
    const Mask all = low_mask(k + 1);
    std::vector<Block> blocks;
    for (int e = 1; e <= k + 1; ++e)
        blocks.push_back(all & ~coordinate_bit(e));
    return Unitrade(k + 1, k, std::move(blocks));
}

Unitrade r_unitrade(int k)
{
    if (k < 1 || k + 2 > max_ambient)
        throw Error(ErrorCode::ParameterOutOfRange, "R_k needs 1 <= k <= 61");
    const Unitrade first = w_unitrade(k);
    std::vector<int> mapping(static_cast<std::size_t>(k) + 2);
    std::iota(mapping.begin(), mapping.end(), 0);
    mapping[static_cast<std::size_t>(k) + 1] = k + 2;
    return symmetric_difference(first, relabel(first, mapping));
}

Unitrade catalog(CatalogName name, int k)
{
    switch (name) {
    case CatalogName::W: return w_unitrade(k);
    case CatalogName::R5: return from_lists(5, r5_blocks);
    case CatalogName::P9:
        return from_lists(4, {{1, 2, 5, 6}, {1, 3, 5, 6}, {2, 3, 5, 6}, {1, 2, 4, 6}, {1, 3, 4, 6}, {2, 3, 4, 6},
                                 {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}});
    case CatalogName::S12:
        return from_lists(5, {{1, 2, 3, 5, 6}, {1, 2, 4, 5, 6}, {1, 3, 4, 5, 6}, {2, 3, 4, 5, 6},
                                 {1, 2, 3, 5, 7}, {1, 2, 4, 5, 7}, {1, 3, 4, 5, 7}, {2, 3, 4, 5, 7},
                                 {1, 2, 3, 6, 7}, {1, 2, 4, 6, 7}, {1, 3, 4, 6, 7}, {2, 3, 4, 6, 7}});
    case CatalogName::E16:
        return from_lists(5, {{1, 2, 3, 5, 6}, {1, 2, 4, 5, 6}, {1, 3, 4, 5, 6}, {2, 3, 4, 5, 6},
                                 {1, 2, 3, 5, 7}, {1, 2, 4, 5, 7}, {1, 3, 4, 5, 7}, {2, 3, 4, 5, 7},
                                 {1, 2, 3, 6, 7}, {1, 2, 4, 6, 7}, {1, 3, 4, 6, 7},
                                 {2, 3, 4, 6, 8}, {2, 3, 4, 7, 8}, {2, 3, 6, 7, 8}, {2, 4, 6, 7, 8}, {3, 4, 6, 7, 8}});
    case CatalogName::F16:
        return from_lists(5, {{1, 2, 3, 5, 7}, {1, 2, 4, 5, 7}, {1, 3, 4, 5, 7}, {2, 3, 4, 5, 7},
                                 {1, 2, 3, 6, 7}, {1, 2, 4, 6, 7}, {1, 3, 4, 6, 7}, {2, 3, 4, 6, 7},
                                 {1, 2, 3, 6, 8}, {1, 2, 4, 6, 8}, {1, 3, 4, 6, 8}, {2, 3, 4, 6, 8},
                                 {1, 2, 3, 5, 8}, {1, 2, 4, 5, 8}, {1, 3, 4, 5, 8}, {2, 3, 4, 5, 8}});
    case CatalogName::H1:
        return with_r5({{1, 2, 3, 4, 5}, {2, 3, 4, 5, 8}, {1, 3, 4, 5, 8}, {1, 2, 4, 5, 8}, {1, 2, 3, 5, 8},
            {1, 2, 3, 4, 8}});
    case CatalogName::H2:
        return with_r5({{1, 2, 3, 6, 7}, {2, 3, 6, 7, 8}, {1, 3, 6, 7, 8}, {1, 2, 6, 7, 8}, {1, 2, 3, 6, 8},
            {1, 2, 3, 7, 8}});
    case CatalogName::H3:
        return with_r5({{1, 2, 3, 4, 8}, {2, 3, 4, 8, 9}, {1, 3, 4, 8, 9}, {1, 2, 4, 8, 9}, {1, 2, 3, 8, 9},
            {1, 2, 3, 4, 9}});
    }
    throw Error(ErrorCode::ParameterOutOfRange, "unknown catalog entry");
}

} // namespace cubesplit
