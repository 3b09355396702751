#include "focus/aec/generators.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "focus/rng.hpp"

namespace focus::aec {

namespace {

// Collects edges while tracking degrees and adjacency for the random builders.
class Builder {
public:
    explicit Builder(int n) : deg_(n, 0) {}

    int degree(Vertex v) const { return deg_[v]; }
    bool has(Vertex a, Vertex b) const { return pairs_.count(key(a, b)) != 0; }

    void add(Vertex a, Vertex b)
    {
        edges_.push_back({a, b});
        pairs_.insert(key(a, b));
        ++deg_[a];
        ++deg_[b];
    }

    void remove(Vertex a, Vertex b)
    {
        pairs_.erase(key(a, b));
        const auto it = std::find_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
            return (e.u == a && e.v == b) || (e.u == b && e.v == a);
        });
        edges_.erase(it);
        --deg_[a];
        --deg_[b];
    }

    const std::vector<Edge>& edges() const { return edges_; }

    Graph build(int n) { return Graph(n, edges_); }

private:
    static std::pair<Vertex, Vertex> key(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

    std::vector<int> deg_;
    std::vector<Edge> edges_;
    std::set<std::pair<Vertex, Vertex>> pairs_;
};

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items)
{
    return items[uniform_below(rng, items.size())];
}

} // namespace

Graph path_graph(int n)
{
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v)
        edges.push_back({v, v + 1});
    return Graph(n, std::move(edges));
}

Graph cycle_graph(int n)
{
    if (n < 3)
        throw std::invalid_argument("a cycle needs at least three vertices");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v)
        edges.push_back({v, (v + 1) % n});
    return Graph(n, std::move(edges));
}

Graph complete_graph(int n)
{
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            edges.push_back({a, b});
    return Graph(n, std::move(edges));
}

Graph star_graph(int leaves)
{
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v)
        edges.push_back({0, v});
    return Graph(leaves + 1, std::move(edges));
}

Graph random_tree(int n, int max_degree, std::uint64_t seed)
{
    if (max_degree < 2 && n > 2)
        throw std::invalid_argument("trees on more than two vertices need max degree >= 2");
    Rng rng(seed);
    Builder b(n);
    for (Vertex v = 1; v < n; ++v) {
        std::vector<Vertex> open;
        for (Vertex w = 0; w < v; ++w)
            if (b.degree(w) < max_degree)
                open.push_back(w);
        b.add(pick(rng, open), v);
    }
    return b.build(n);
}

Graph random_series_parallel(int n, int max_degree, std::uint64_t seed)
{
    if (max_degree < 2)
        throw std::invalid_argument("series-parallel generator needs max degree >= 2");
    Rng rng(seed);
    Builder b(n);
    if (n >= 2)
        b.add(0, 1);
    for (Vertex v = 2; v < n; ++v) {
        std::vector<Edge> open;
        for (const Edge& e : b.edges())
            if (b.degree(e.u) < max_degree && b.degree(e.v) < max_degree)
                open.push_back(e);
        // mostly close a triangle on an existing edge, sometimes hang a pendant vertex
        if (!open.empty() && uniform_below(rng, 5) != 0) {
            const Edge e = pick(rng, open);
            b.add(e.u, v);
            b.add(e.v, v);
            continue;
        }
        std::vector<Vertex> single;
        for (Vertex w = 0; w < v; ++w)
            if (b.degree(w) < max_degree)
                single.push_back(w);
        b.add(pick(rng, single), v);
    }
    return b.build(n);
}

Graph random_planar_triangulation(int n, int max_degree, std::uint64_t seed)
{
    if (max_degree < 6)
        throw std::invalid_argument("planar triangulation generator needs max degree >= 6");
    if (n < 4)
        return complete_graph(std::max(n, 0));
    Rng rng(seed);
    Builder b(n);
    using Face = std::array<Vertex, 3>;
    std::vector<Face> faces{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (Vertex a = 0; a < 4; ++a)
        for (Vertex c = a + 1; c < 4; ++c)
            b.add(a, c);
    int used = 4;
    for (Vertex v = 4; v < n; ++v) {
        std::vector<std::size_t> open;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (std::all_of(faces[f].begin(), faces[f].end(), [&](Vertex x) { return b.degree(x) < max_degree; }))
                open.push_back(f);
        if (open.empty())
            break;
        const std::size_t f = pick(rng, open);
        const Face face = faces[f];
        for (Vertex x : face)
            b.add(x, v);
        faces[f] = {face[0], face[1], v};
        faces.push_back({face[0], face[2], v});
        faces.push_back({face[1], face[2], v});
        used = v + 1;
    }

    // random flips: edge ab shared by faces abc, abd becomes cd
    const int flips = 2 * used;
    for (int k = 0; k < flips; ++k) {
        const std::size_t f1 = uniform_below(rng, faces.size());
        const int side = static_cast<int>(uniform_below(rng, 3));
        const Vertex a = faces[f1][side];
        const Vertex bb = faces[f1][(side + 1) % 3];
        const Vertex c = faces[f1][(side + 2) % 3];
        std::size_t f2 = faces.size();
        for (std::size_t g = 0; g < faces.size(); ++g) {
            if (g == f1)
                continue;
            const Face& h = faces[g];
            if (std::count(h.begin(), h.end(), a) && std::count(h.begin(), h.end(), bb)) {
                f2 = g;
                break;
            }
        }
        if (f2 == faces.size())
            continue;
        Vertex d = -1;
        for (Vertex x : faces[f2])
            if (x != a && x != bb)
                d = x;
        if (b.has(c, d) || b.degree(c) >= max_degree || b.degree(d) >= max_degree || b.degree(a) <= 3 ||
            b.degree(bb) <= 3)
            continue;
        b.remove(a, bb);
        b.add(c, d);
        faces[f1] = {a, c, d};
        faces[f2] = {bb, c, d};
    }
    return b.build(used);
}

Graph random_bounded_gnp(int n, double p, int max_degree, std::uint64_t seed)
{
    Rng rng(seed);
    Builder b(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex c = a + 1; c < n; ++c)
            if (uniform01(rng) < p && b.degree(a) < max_degree && b.degree(c) < max_degree)
                b.add(a, c);
    return b.build(n);
}

} // namespace focus::aec
