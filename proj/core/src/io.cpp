#include "cubesplit/io.hpp"

#include "cubesplit/error.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace cubesplit {

namespace {

std::string strip_comment(std::string line)
{
    if (auto pos = line.find('#'); pos != std::string::npos)
        line.erase(pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
        line.pop_back();
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
        ++i;
    return line.substr(i);
}

int parse_int(std::string_view text, const std::string& what)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(ErrorCode::ParseError, "bad " + what + ": '" + std::string(text) + "'");
    return value;
}

struct Header {
    std::optional<int> n;
    std::optional<int> k;
};

// Accepts "n=8 k=5" in any order; returns nullopt if the line is no header.
std::optional<Header> parse_header(const std::string& line)
{
    if (line.find('=') == std::string::npos)
        return std::nullopt;
    Header h;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, "bad header token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const int value = parse_int(std::string_view(tok).substr(eq + 1), key);
        if (key == "n")
            h.n = value;
        else if (key == "k")
            h.k = value;
        else
            throw Error(ErrorCode::ParseError, "unknown header key '" + key + "'");
    }
    return h;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    return in;
}

struct BlockFile {
    int n = 0;
    int k = 0;
    std::vector<Block> blocks;
};

BlockFile read_blocks(std::istream& in)
{
    BlockFile f;
    bool have_header = false;
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = strip_comment(raw);
        if (line.empty())
            continue;
        if (!have_header) {
            auto h = parse_header(line);
            if (!h || !h->n || !h->k)
                throw Error(ErrorCode::ParseError, "expected header 'n=<int> k=<int>'");
            f.n = *h->n;
            f.k = *h->k;
            if (f.n < 1 || f.n > max_ambient)
                throw Error(ErrorCode::AmbientTooLarge, "n=" + std::to_string(f.n));
            have_header = true;
            continue;
        }
        std::istringstream ss(line);
        std::string tok;
        Block b = 0;
        int count = 0;
        while (ss >> tok) {
            const int e = parse_int(tok, "element");
            if (e < 1 || e > f.n)
                throw Error(ErrorCode::OutOfRange, "element " + tok + " outside 1.." + std::to_string(f.n));
            b |= coordinate_bit(e);
            ++count;
        }
        if (std::popcount(b) != count)
            throw Error(ErrorCode::ParseError, "repeated element in '" + line + "'");
        f.blocks.push_back(b);
    }
    if (!have_header)
        throw Error(ErrorCode::ParseError, "missing header 'n=<int> k=<int>'");
    return f;
}

void write_blocks(std::ostream& out, int n, int k, const std::vector<Block>& blocks)
{
    out << "n=" << n << " k=" << k << '\n';
    for (Block b : blocks) {
        bool first = true;
        for (int e : block_elements(b)) {
            out << (first ? "" : " ") << e;
            first = false;
        }
        out << '\n';
    }
}

} // namespace

Splitting read_faces(std::istream& in)
{
    Header header;
    std::vector<Face> faces;
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = strip_comment(raw);
        if (line.empty())
            continue;
        if (auto h = parse_header(line)) {
            if (!faces.empty())
                throw Error(ErrorCode::ParseError, "header after faces");
            header = *h;
            continue;
        }
        faces.push_back(parse_face(line));
    }
    if (faces.empty()) {
        if (header.n && header.k)
            return Splitting(*header.n, *header.k, {});
        throw Error(ErrorCode::EmptyPattern, "face file holds no faces");
    }
    Splitting s = Splitting::from_faces(std::move(faces));
    if (header.n && *header.n != s.ambient())
        throw Error(ErrorCode::DimensionMismatch,
            "header n=" + std::to_string(*header.n) + " but faces have length " + std::to_string(s.ambient()));
    if (header.k && *header.k != s.k())
        throw Error(ErrorCode::DimensionMismatch,
            "header k=" + std::to_string(*header.k) + " but faces have codimension " + std::to_string(s.k()));
    return s;
}

Splitting read_faces_file(const std::string& path)
{
    auto in = open_in(path);
    return read_faces(in);
}

void write_faces(std::ostream& out, const Splitting& s)
{
    out << "n=" << s.ambient() << " k=" << s.k() << '\n';
    for (const Face& f : s.faces())
        out << format_face(f) << '\n';
}

void write_faces_file(const std::string& path, const Splitting& s)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    write_faces(out, s);
}

Unitrade read_unitrade(std::istream& in)
{
    BlockFile f = read_blocks(in);
    return Unitrade(f.n, f.k, std::move(f.blocks));
}

Unitrade read_unitrade_file(const std::string& path)
{
    auto in = open_in(path);
    return read_unitrade(in);
}

void write_unitrade(std::ostream& out, const Unitrade& u)
{
    write_blocks(out, u.ground(), u.k(), u.blocks());
}

Hypergraph read_hypergraph(std::istream& in)
{
    BlockFile f = read_blocks(in);
    return Hypergraph(f.n, f.k, std::move(f.blocks));
}

Hypergraph read_hypergraph_file(const std::string& path)
{
    auto in = open_in(path);
    return read_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h)
{
    write_blocks(out, h.vertex_count(), h.uniformity(), h.edges());
}

PhiAssignment read_phi(std::istream& in, const Hypergraph& h)
{
    std::map<int, Mask> entries;
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = strip_comment(raw);
        if (line.empty())
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::ParseError, "expected '<edge-index>: <bits>' in '" + line + "'");
        const int idx = parse_int(strip_comment(line.substr(0, colon)), "edge index");
        if (idx < 0 || static_cast<std::size_t>(idx) >= h.edges().size())
            throw Error(ErrorCode::OutOfRange, "edge index " + std::to_string(idx));
        const std::string bits = strip_comment(line.substr(colon + 1));
        const auto elems = block_elements(h.edges()[static_cast<std::size_t>(idx)]);
        if (bits.size() != elems.size())
            throw Error(ErrorCode::DimensionMismatch, "edge " + std::to_string(idx) + " needs " + std::to_string(elems.size()) + " bits");
        Mask coloring = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                coloring |= coordinate_bit(elems[i]);
            else if (bits[i] != '0')
                throw Error(ErrorCode::InvalidSymbol, "bit '" + std::string(1, bits[i]) + "'");
        }
        if (!entries.emplace(idx, normalize_phi(h.edges()[static_cast<std::size_t>(idx)], coloring)).second)
            throw Error(ErrorCode::ParseError, "edge index " + std::to_string(idx) + " listed twice");
    }
    PhiAssignment phi;
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        auto it = entries.find(static_cast<int>(i));
        if (it == entries.end())
            throw Error(ErrorCode::MissingPhiEntry, "no entry for edge " + std::to_string(i));
        phi.colorings.push_back(it->second);
    }
    return phi;
}

void write_phi(std::ostream& out, const Hypergraph& h, const PhiAssignment& phi)
{
    for (std::size_t i = 0; i < h.edges().size() && i < phi.colorings.size(); ++i) {
        out << i << ": ";
        for (int e : block_elements(h.edges()[i]))
            out << ((phi.colorings[i] & coordinate_bit(e)) ? '1' : '0');
        out << '\n';
    }
}

} // namespace cubesplit
