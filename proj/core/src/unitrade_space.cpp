#include "cubesplit/unitrade_space.hpp"

#include "cubesplit/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace cubesplit {

std::vector<Block> colex_subsets(int n, int k)
{
    if (n < 0 || n > max_ambient || k < 0 || k > n)
        throw Error(ErrorCode::ParameterOutOfRange, "subsets of size " + std::to_string(k) + " of " + std::to_string(n));
    std::vector<Block> out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    // Gosper's hack walks k-subsets in increasing numeric (co-lex) order.
    Block x = low_mask(k);
    const Block limit = low_mask(n);
    while ((x & ~limit) == 0) {
        out.push_back(x);
        const Block c = x & (~x + 1);
        const Block r = x + c;
        if (r == 0)
            break;
        x = (((r ^ x) >> 2) / c) | r;
    }
    return out;
}

BitVector& BitVector::operator^=(const BitVector& o) noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= o.words_[i];
    return *this;
}

std::size_t BitVector::count() const noexcept
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool BitVector::none() const noexcept
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

Kernel gf2_kernel(std::vector<BitVector> rows, std::size_t columns)
{
    Kernel out;
    out.columns = columns;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    std::vector<bool> is_pivot(columns, false);
    for (std::size_t c = 0; c < columns && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !rows[p].test(c))
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].test(c))
                rows[i] ^= rows[r];
        pivot_col.push_back(c);
        is_pivot[c] = true;
        ++r;
    }
    out.rank = r;
    for (std::size_t c = 0; c < columns; ++c) {
        if (is_pivot[c])
            continue;
        BitVector v(columns);
        v.set(c);
        for (std::size_t i = 0; i < r; ++i)
            if (rows[i].test(c))
                v.set(pivot_col[i]);
        out.free_columns.push_back(c);
        out.basis.push_back(std::move(v));
    }
    return out;
}

std::size_t gf2_rank(std::vector<BitVector> rows)
{
    if (rows.empty())
        return 0;
    const std::size_t columns = rows.front().size();
    return gf2_kernel(std::move(rows), columns).rank;
}

std::vector<Unitrade> UnitradeSpace::basis() const
{
    std::vector<Unitrade> out;
    out.reserve(kernel.basis.size());
    for (const auto& v : kernel.basis)
        out.push_back(unitrade(v));
    return out;
}

BitVector UnitradeSpace::indicator(const Unitrade& u) const
{
    if (u.k() != k && !u.empty())
        throw Error(ErrorCode::MixedBlockSize, "unitrade block size differs from the space");
    BitVector v(columns.size());
    for (Block b : u.blocks()) {
        auto it = std::lower_bound(columns.begin(), columns.end(), b);
        if (it == columns.end() || *it != b)
            throw Error(ErrorCode::OutOfRange, "block {" + format_block(b) + "} outside the ground set");
        v.set(static_cast<std::size_t>(it - columns.begin()));
    }
    return v;
}

Unitrade UnitradeSpace::unitrade(const BitVector& v) const
{
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (v.test(i))
            blocks.push_back(columns[i]);
    return Unitrade(n, k, std::move(blocks));
}

bool UnitradeSpace::contains(const Unitrade& u) const
{
    // Free coordinates determine the only possible combination.
    const BitVector target = indicator(u);
    BitVector sum(columns.size());
    for (std::size_t j = 0; j < kernel.free_columns.size(); ++j)
        if (target.test(kernel.free_columns[j]))
            sum ^= kernel.basis[j];
    return sum == target;
}

UnitradeSpace unitrade_space_basis(int n, int k, const SpaceLimits& limits)
{
    if (k < 1 || k > n || n > max_ambient)
        throw Error(ErrorCode::ParameterOutOfRange, "V(k,n) needs 1 <= k <= n <= 63");
    UnitradeSpace space;
    space.n = n;
    space.k = k;
    // Size checks before materialising anything.
    auto binom = [](int a, int b) {
        unsigned __int128 r = 1;
        for (int i = 1; i <= b; ++i)
            r = r * static_cast<unsigned>(a - b + i) / static_cast<unsigned>(i);
        return r;
    };
    const auto cols = binom(n, k);
    const auto rows = binom(n, k - 1);
    if (cols > limits.max_columns || cols * rows > limits.max_matrix_bits)
        throw Error(ErrorCode::ParameterTooLarge,
            "inclusion matrix for n=" + std::to_string(n) + " k=" + std::to_string(k) + " is too large");

    space.columns = colex_subsets(n, k);
    const std::vector<Block> shadows = colex_subsets(n, k - 1);
    std::vector<BitVector> matrix(shadows.size(), BitVector(space.columns.size()));
    for (std::size_t c = 0; c < space.columns.size(); ++c) {
        const Block b = space.columns[c];
        for (Block rest = b; rest; rest &= rest - 1) {
            const Block sub = b & ~(rest & (~rest + 1));
            auto it = std::lower_bound(shadows.begin(), shadows.end(), sub);
            matrix[static_cast<std::size_t>(it - shadows.begin())].set(c);
        }
    }
    space.kernel = gf2_kernel(std::move(matrix), space.columns.size());
    return space;
}

std::vector<BitVector> span_elements_of_weight(const UnitradeSpace& space, std::size_t weight, unsigned workers)
{
    const std::size_t d = space.dimension();
    if (d > static_cast<std::size_t>(max_span_dimension))
        throw Error(ErrorCode::SpanTooLarge,
            "span of dimension " + std::to_string(d) + " exceeds 2^" + std::to_string(max_span_dimension) + " elements");
    const std::size_t cols = space.columns.size();
    const std::size_t low = std::min<std::size_t>(d, 16);
    const std::size_t chunks = std::size_t{1} << (d - low);
    const auto& basis = space.kernel.basis;

    std::vector<std::vector<BitVector>> found(chunks);
    detail::parallel_for(chunks, workers, [&](std::size_t j) {
        const std::uint64_t x0 = static_cast<std::uint64_t>(j) << low;
        const std::uint64_t g0 = x0 ^ (x0 >> 1);
        BitVector cur(cols);
        for (std::size_t i = 0; i < d; ++i)
            if (g0 >> i & 1)
                cur ^= basis[i];
        const std::uint64_t steps = std::uint64_t{1} << low;
        for (std::uint64_t i = 0; i < steps; ++i) {
            if (i != 0)
                cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
            if (cur.count() == weight)
                found[j].push_back(cur);
        }
    });
    std::vector<BitVector> out;
    for (auto& f : found)
        for (auto& v : f)
            out.push_back(std::move(v));
    return out;
}

std::vector<WDecomposition> w_decompositions(const Unitrade& u)
{
    std::vector<WDecomposition> out;
    const int k = u.k();
    if (k < 1 || u.size() < static_cast<std::size_t>(k) + 1)
        return out;
    const auto elems = support_elements(u);
    if (elems.size() < static_cast<std::size_t>(k) + 1)
        return out;
    // (k+1)-subsets of the support, through positions.
    for (Block pos : colex_subsets(static_cast<int>(elems.size()), k + 1)) {
        Block x = 0;
        for (int p : block_elements(pos))
            x |= coordinate_bit(elems[static_cast<std::size_t>(p - 1)]);
        bool all_in = true;
        std::vector<Block> wblocks;
        for (Block rest = x; rest && all_in; rest &= rest - 1) {
            const Block blk = x & ~(rest & (~rest + 1));
            all_in = u.contains(blk);
            wblocks.push_back(blk);
        }
        if (!all_in)
            continue;
        Unitrade w(u.ground(), k, wblocks);
        out.push_back({w, symmetric_difference(u, w)});
    }
    return out;
}

namespace {

struct NamedEntry {
    std::string name;
    Unitrade u;
};

std::vector<NamedEntry> catalog_for(int k)
{
    std::vector<NamedEntry> out;
    if (k >= 1)
        out.push_back({"W" + std::to_string(k), w_unitrade(k)});
    if (k >= 2 && k != 5)
        out.push_back({"R" + std::to_string(k), r_unitrade(k)});
    if (k == 4)
        out.push_back({"P9", catalog(CatalogName::P9)});
    if (k == 5) {
        for (auto name : {CatalogName::R5, CatalogName::S12, CatalogName::E16, CatalogName::F16, CatalogName::H1,
                 CatalogName::H2, CatalogName::H3})
            out.push_back({std::string(to_string(name)), catalog(name)});
    }
    return out;
}

} // namespace

std::vector<std::string> describe_unitrade(const Unitrade& u)
{
    std::vector<std::string> names;
    const auto key = canonical_unitrade(u);
    for (const auto& entry : catalog_for(u.k()))
        if (entry.u.size() == u.size() && canonical_unitrade(entry.u) == key)
            names.push_back(entry.name);

    const int k = u.k();
    if (k >= 2) {
        const auto w_key = canonical_unitrade(w_unitrade(k));
        const auto r_key = canonical_unitrade(r_unitrade(k));
        bool ww = false;
        bool wr = false;
        for (const auto& d : w_decompositions(u)) {
            if (d.rest.size() == static_cast<std::size_t>(k) + 1 && d.rest.size() + d.w.size() == u.size()
                && canonical_unitrade(d.rest) == w_key)
                ww = true;
            if (d.rest.size() == static_cast<std::size_t>(2 * k) && d.rest.size() + d.w.size() == u.size()
                && canonical_unitrade(d.rest) == r_key)
                wr = true;
        }
        if (ww)
            names.push_back("W+W");
        if (wr)
            names.push_back("W+R");
    }
    return names;
}

EquivalenceClassReport enumerate_weight(int n, int k, std::size_t weight, unsigned workers)
{
    const UnitradeSpace space = unitrade_space_basis(n, k);
    EquivalenceClassReport report;
    report.n = n;
    report.k = k;
    report.weight = weight;
    report.dimension = space.dimension();

    const auto elements = span_elements_of_weight(space, weight, workers);
    report.total = elements.size();
    std::vector<std::vector<std::uint64_t>> keys(elements.size());
    detail::parallel_for(elements.size(), workers,
        [&](std::size_t i) { keys[i] = canonical_unitrade(space.unitrade(elements[i])); });

    std::map<std::vector<std::uint64_t>, std::size_t> index;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        auto [it, inserted] = index.try_emplace(keys[i], report.classes.size());
        if (inserted) {
            EquivalenceClass cls;
            cls.representative = space.unitrade(elements[i]);
            cls.support_size = support_elements(cls.representative).size();
            report.classes.push_back(std::move(cls));
        }
        ++report.classes[it->second].size;
    }
    for (auto& cls : report.classes)
        cls.names = describe_unitrade(cls.representative);
    return report;
}

} // namespace cubesplit
