#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "focus/aec/explicit.hpp"
#include "focus/aec/generators.hpp"
#include "focus/aec/solver.hpp"
#include "focus/analysis.hpp"
#include "support.hpp"

using namespace focus;
using namespace focus::aec;

namespace {

Graph graph_from(const std::string& text)
{
    std::istringstream in(text);
    return parse_graph(in);
}

// Every simple cycle of exactly `length` edges through edge e, by brute force
// over ordered vertex sequences.
std::uint64_t brute_cycles(const Graph& g, EdgeId e, int length)
{
    const auto [u, v] = g.edge(e);
    std::uint64_t count = 0;
    std::vector<Vertex> seq{v};
    std::vector<char> used(g.num_vertices(), 0);
    used[u] = used[v] = 1;
    std::function<void()> grow = [&]() {
        if (static_cast<int>(seq.size()) == length - 1) {
            if (g.edge_between(seq.back(), u))
                ++count;
            return;
        }
        for (Vertex w = 0; w < g.num_vertices(); ++w)
            if (!used[w] && g.edge_between(seq.back(), w)) {
                used[w] = 1;
                seq.push_back(w);
                grow();
                seq.pop_back();
                used[w] = 0;
            }
    };
    grow();
    return count;
}

// Omega membership straight from the definition: proper, and no 4-cycle whose
// edges use exactly two colors.
bool oracle_in_omega(const Graph& g, std::span<const Color> colors)
{
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        std::set<Color> seen;
        for (const Incidence& inc : g.incident(x))
            if (colors[inc.edge] == kUncolored || !seen.insert(colors[inc.edge]).second)
                return false;
    }
    for (Vertex a = 0; a < g.num_vertices(); ++a)
        for (Vertex b = 0; b < g.num_vertices(); ++b)
            for (Vertex c = 0; c < g.num_vertices(); ++c)
                for (Vertex d = 0; d < g.num_vertices(); ++d) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d)
                        continue;
                    const auto ab = g.edge_between(a, b), bc = g.edge_between(b, c), cd = g.edge_between(c, d),
                               da = g.edge_between(d, a);
                    if (ab && bc && cd && da && colors[*ab] == colors[*cd] && colors[*bc] == colors[*da])
                        return false;
                }
    return true;
}

} // namespace

TEST_SUITE("aec")
{
    TEST_CASE("graph parsing")
    {
        const Graph g = graph_from("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n");
        CHECK(g.num_vertices() == 3);
        CHECK(g.num_edges() == 3);
        CHECK(g.max_degree() == 2);
        CHECK(g.edge_between(0, 2) == 2);
        CHECK(g.edge_between(2, 0) == 2);

        auto line_of = [](const std::string& text) -> std::size_t {
            try {
                graph_from(text);
            } catch (const ParseError& e) {
                return e.line() + 1000;
            }
            return 0;
        };
        CHECK(line_of("p edge 2 1\ne 1 1\n") == 1002);
        CHECK(line_of("p edge 2 2\ne 1 2\ne 2 1\n") == 1003);
        CHECK(line_of("p edge 2 1\ne 1 3\n") == 1002);
        CHECK(line_of("e 1 2\n") == 1001);
        CHECK(line_of("p edge 2 2\ne 1 2\n") >= 1000);
        CHECK(line_of("p edge 2 1\ne 1 2 3\n") == 1002);

        std::ostringstream out;
        write_graph(out, g);
        CHECK(graph_from(out.str()).edges().size() == 3);
        CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
        CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    }

    TEST_CASE("degeneracy")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed)
            CHECK(degeneracy_order(random_tree(30, 4, seed)).degeneracy == 1);
        CHECK(degeneracy_order(cycle_graph(7)).degeneracy == 2);
        CHECK(degeneracy_order(complete_graph(5)).degeneracy == 4);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CHECK(degeneracy_order(random_series_parallel(40, 8, seed)).degeneracy <= 2);
            const Graph planar = random_planar_triangulation(60, 12, seed);
            CHECK(degeneracy_order(planar).degeneracy <= 5);
            CHECK(planar.max_degree() <= 12);
            CHECK(planar.num_edges() == 3 * planar.num_vertices() - 6);
        }
        // orientation along the order has out-degree at most d
        const Graph g = random_bounded_gnp(40, 0.2, 9, 3);
        const auto deg = degeneracy_order(g);
        std::vector<int> pos(g.num_vertices());
        for (std::size_t k = 0; k < deg.order.size(); ++k)
            pos[deg.order[k]] = static_cast<int>(k);
        std::vector<int> out(g.num_vertices(), 0);
        for (const Edge& e : g.edges())
            ++out[pos[e.u] < pos[e.v] ? e.u : e.v];
        for (int o : out)
            CHECK(o <= deg.degeneracy);
    }

    TEST_CASE("cycles through an edge")
    {
        CHECK(cycles_through_edge(cycle_graph(6), 0, 6) == 1);
        CHECK(cycles_through_edge(cycle_graph(6), 0, 4) == 0);
        CHECK(cycles_through_edge(complete_graph(4), 0, 4) == 2);
        CHECK(cycles_through_edge(random_tree(12, 3, 1), 0, 6) == 0);
        CHECK(degenerate_cycle_bound(2, 2, 2) == doctest::Approx(192.0));
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const Graph g = random_bounded_gnp(9, 0.45, 6, seed);
            for (EdgeId e = 0; e < g.num_edges(); ++e)
                for (int len : {4, 6, 8})
                    CHECK(cycles_through_edge(g, e, len) == brute_cycles(g, e, len));
        }
        CHECK_THROWS_AS(cycles_through_edge(complete_graph(9), 0, 9, 10), CapExceeded);
    }

    TEST_CASE("cycle count bounds")
    {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const Graph g = random_bounded_gnp(12, 0.35, 6, seed);
            const int d = degeneracy_order(g).degeneracy;
            const int delta = g.max_degree();
            for (EdgeId e = 0; e < g.num_edges(); ++e)
                for (int n : {2, 3}) {
                    const auto c = static_cast<double>(cycles_through_edge(g, e, 2 * n + 2));
                    CHECK(c <= degenerate_cycle_bound(n, d, delta));
                    CHECK(c <= std::pow(delta - 1, 2 * n));
                }
        }
    }

    TEST_CASE("palette sizes")
    {
        const auto deg = palette_for(100, 4, PaletteMode::degenerate);
        CHECK(deg.q == 280);
        CHECK(deg.surplus == 82);
        CHECK(deg.epsilon == doctest::Approx(0.8));
        CHECK(palette_for(101, 4, PaletteMode::general).q == 419);
        const auto full = palette_for(50, 50, PaletteMode::degenerate);
        CHECK(full.q == 300);
        const auto pick = palette_for(50, 50, PaletteMode::automatic);
        CHECK(pick.mode == PaletteMode::general);
        CHECK(pick.q == palette_for(50, 50, PaletteMode::general).q);
        CHECK(palette_for(30, 1, PaletteMode::automatic).mode == PaletteMode::degenerate);
        for (int delta = 2; delta < 200; ++delta)
            for (int d = 1; d <= std::min(delta, 8); ++d) {
                const auto p = palette_for(delta, d, PaletteMode::degenerate);
                CHECK(p.q == static_cast<int>(std::ceil((2.0 + 4.0 * std::sqrt(double(d) / delta)) * delta - 1e-9)));
                CHECK(p.surplus >= 1);
                CHECK(p.q >= delta + 1);
            }
        CHECK(palette_for(1, 1, PaletteMode::general).q == 2);
        CHECK(palette_for(0, 0, PaletteMode::automatic).q == 1);
        CHECK(palette_for(2, 2, PaletteMode::general).q == 5);
        CHECK(parse_palette_mode("auto") == PaletteMode::automatic);
        CHECK_THROWS_AS(parse_palette_mode("greedy"), std::invalid_argument);
    }

    TEST_CASE("condition margins")
    {
        CHECK(general_margin(6) == doctest::Approx(std::pow(1 / 1.241558, 4) * std::pow(1.15505, 6)).epsilon(1e-3));
        for (int len = 6; len <= 30; len += 2)
            CHECK(general_margin(len) < 1.0);
        CHECK(general_margin(200) < 1e-3);
        CHECK(degenerate_coefficient() == doctest::Approx(3.9997).epsilon(1e-4));
        CHECK_THROWS_AS(degenerate_coefficient(2.76, 0.25), std::domain_error);
        const auto p = palette_for(100, 4, PaletteMode::degenerate);
        CHECK(condition_margin(p, 6, PaletteMode::degenerate) < 1.0);
        CHECK_THROWS_AS(condition_margin(p, 5, PaletteMode::general), std::invalid_argument);
    }

    TEST_CASE("four-available colors")
    {
        // u = 0 with two other colored edges, v = 3 isolated otherwise
        Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
        EdgeColoring c(star, 5);
        c.assign(0, 1);
        c.assign(1, 2);
        CHECK(four_available(c, 2) == std::vector<Color>{3, 4, 5});

        // path u-v-w-x plus edge x-u; edge {v,w} has 1, {w,x} has 2, {u,x} has 1
        Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        EdgeColoring s(square, 5);
        s.assign(1, 1);
        s.assign(2, 2);
        s.assign(3, 1);
        const auto avail = four_available(s, 0);
        CHECK(std::find(avail.begin(), avail.end(), 2) == avail.end());
        CHECK(std::find(avail.begin(), avail.end(), 1) == avail.end());
        CHECK(avail == std::vector<Color>{3, 4, 5});

        EdgeColoring blank(square, 5);
        CHECK(four_available(blank, 0).size() == 5);
    }

    TEST_CASE("initial coloring lies in Omega")
    {
        const Graph edge(2, {{0, 1}});
        CHECK(initial_coloring(edge, 3).color(0) == 3);
        const Graph star = star_graph(3);
        const auto sc = initial_coloring(star, 5);
        CHECK(std::set<Color>(sc.colors().begin(), sc.colors().end()).size() == 3);
        CHECK(sc == initial_coloring(star, 5));

        const Graph c6 = cycle_graph(6);
        for (int q = 3; q <= 6; ++q) {
            const auto c = initial_coloring(c6, q);
            CHECK(in_omega(c));
            CHECK(oracle_in_omega(c6, c.colors()));
        }
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Graph g = random_bounded_gnp(10, 0.5, 5, seed);
            const auto p = palette_size(g, PaletteMode::general);
            const auto c = initial_coloring(g, p.q);
            CHECK(in_omega(c));
            CHECK(oracle_in_omega(g, c.colors()));
            for (const auto& flaw : find_flaws(c))
                CHECK(flaw.length() >= 6);
        }
        CHECK_THROWS_AS(initial_coloring(complete_graph(5), 4), std::invalid_argument);
    }

    TEST_CASE("flaw detection")
    {
        const Graph c6 = cycle_graph(6);
        const auto alt = EdgeColoring::from_colors(c6, 5, std::vector<Color>{1, 2, 1, 2, 1, 2});
        const auto flaws = find_flaws(alt);
        REQUIRE(flaws.size() == 1);
        CHECK(flaws[0].length() == 6);
        CHECK(flaws[0].vertices == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
        CHECK(is_bichromatic(alt, flaws[0]));
        const auto three = EdgeColoring::from_colors(c6, 5, std::vector<Color>{1, 2, 1, 2, 3, 2});
        CHECK(find_flaws(three).empty());

        const std::vector<EdgeId> some{3};
        CHECK(find_flaws(alt, std::span<const EdgeId>(some)).size() == 1);
        CHECK(least_flaw(alt) == flaws[0]);

        // canonical form is independent of how the cycle is written down
        const std::vector<Vertex> rotated{3, 2, 1, 0, 5, 4};
        CHECK(make_cycle(c6, rotated) == flaws[0]);
    }

    TEST_CASE("flaws agree with a brute-force scan")
    {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const Graph g = random_bounded_gnp(9, 0.5, 4, seed);
            const int q = 2 * (g.max_degree() - 1) + 1;
            Rng rng(seed);
            // a random member of Omega: greedy random 4-available colors
            EdgeColoring c(g, q);
            for (EdgeId e = 0; e < g.num_edges(); ++e) {
                const auto avail = four_available(c, e);
                c.assign(e, avail[uniform_below(rng, avail.size())]);
            }
            std::set<CycleFlaw> expected;
            for (const auto& cyc : even_cycles(g))
                if (is_bichromatic(c, cyc))
                    expected.insert(cyc);
            const auto got = find_flaws(c);
            CHECK(std::set<CycleFlaw>(got.begin(), got.end()) == expected);
            for (EdgeId e = 0; e < g.num_edges(); ++e) {
                const std::vector<EdgeId> only{e};
                std::set<CycleFlaw> near;
                for (const auto& f : expected)
                    if (std::find(f.edges.begin(), f.edges.end(), e) != f.edges.end())
                        near.insert(f);
                const auto restricted = find_flaws(c, std::span<const EdgeId>(only));
                CHECK(std::set<CycleFlaw>(restricted.begin(), restricted.end()) == near);
            }
        }
    }

    TEST_CASE("resampling stays in Omega and can be undone")
    {
        const Graph c6 = cycle_graph(6);
        const auto alt = EdgeColoring::from_colors(c6, 3, std::vector<Color>{1, 2, 1, 2, 1, 2});
        const auto flaw = find_flaws(alt).at(0);
        CHECK(resample_outcomes(alt, flaw).size() >= 1);

        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const Graph g = random_bounded_gnp(10, 0.5, 4, seed);
            const auto p = palette_size(g, PaletteMode::general);
            Rng rng(seed);
            EdgeColoring c = initial_coloring(g, p.q);
            for (int step = 0; step < 30; ++step) {
                // force a flaw by recoloring a 6-cycle when one can be made bichromatic
                const auto f = least_flaw(c);
                if (!f)
                    break;
                const EdgeColoring before = c;
                resample_cycle(c, *f, rng);
                CHECK(in_omega(c));
                CHECK(reconstruct_previous(c, *f) == before);
            }
        }
    }

    TEST_CASE("resampling support is at least Q^(|C|-2)")
    {
        const Graph c6 = cycle_graph(6);
        for (int q = 3; q <= 6; ++q) {
            std::vector<Color> alt{1, 2, 1, 2, 1, 2};
            const auto c = EdgeColoring::from_colors(c6, q, alt);
            const auto flaw = find_flaws(c).at(0);
            const auto outcomes = resample_outcomes(c, flaw);
            const int surplus = q - 2;
            CHECK(outcomes.size() >= static_cast<std::size_t>(std::pow(surplus, 4)));
            double total = 0.0;
            for (const auto& [colors, p] : outcomes) {
                total += p;
                CHECK(oracle_in_omega(c6, colors));
            }
            CHECK(total == doctest::Approx(1.0));

            // sampled outcomes stay inside the enumerated support
            std::set<std::vector<Color>> support;
            for (const auto& [colors, p] : outcomes)
                support.insert(colors);
            Rng rng(q);
            for (int k = 0; k < 200; ++k) {
                EdgeColoring copy = c;
                resample_cycle(copy, flaw, rng);
                CHECK(support.count(std::vector<Color>(copy.colors().begin(), copy.colors().end())));
            }
        }
    }

    TEST_CASE("explicit AEC instance is atomic")
    {
        const auto inst = to_explicit_instance(cycle_graph(6), 5);
        CHECK(inst.num_flaws() == 1);
        CHECK(inst.flaw_name(0) == "C:1-2-3-4-5-6");
        CHECK(check_atomicity(inst).empty());
        CHECK(enumerate_omega(cycle_graph(6), 3).size() == 66);

        Graph theta_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
        const auto two = to_explicit_instance(theta_graph, 5);
        CHECK(check_atomicity(two).empty());
    }

    TEST_CASE("solver")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Graph tree = random_tree(40, 5, seed);
            const auto r = aec_color(tree, palette_size(tree, PaletteMode::automatic), {seed});
            CHECK(r.steps == 0);
            CHECK_FALSE(verify_acyclic_coloring(tree, r.colors).has_value());
        }
        const Graph c6 = cycle_graph(6);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto p = palette_size(c6, PaletteMode::general);
            CHECK(p.q == 5);
            const auto r = aec_color(c6, p, {seed, std::nullopt, true});
            CHECK(std::set<Color>(r.colors.begin(), r.colors.end()).size() >= 3);
            CHECK_FALSE(verify_acyclic_coloring(c6, r.colors).has_value());
        }
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Graph g = random_series_parallel(60, 20, seed);
            const auto p = palette_size(g, PaletteMode::degenerate);
            const auto a = aec_color(g, p, {seed, std::nullopt, true});
            const auto b = aec_color(g, p, {seed});
            CHECK(a.colors == b.colors);
            CHECK(a.steps == b.steps);
            CHECK_FALSE(verify_acyclic_coloring(g, a.colors).has_value());
        }
    }

    TEST_CASE("step cap")
    {
        const Graph c6 = cycle_graph(6);
        // q = 3 colors a hexagon alternately from the start
        AecParams p = palette_for(2, 2, PaletteMode::general);
        p.q = 3;
        p.surplus = 1;
        const auto start = initial_coloring(c6, 3);
        REQUIRE(least_flaw(start).has_value());
        CHECK_THROWS_AS(aec_color(c6, p, {0, 0}), StepCapExceeded);
        try {
            aec_color(c6, p, {0, 0});
        } catch (const StepCapExceeded& e) {
            CHECK(e.steps() == 0);
        }
    }

    TEST_CASE("verification")
    {
        const Graph c6 = cycle_graph(6);
        const auto v = verify_acyclic_coloring(c6, std::vector<Color>{1, 2, 1, 2, 1, 2});
        REQUIRE(v.has_value());
        CHECK(v->kind == Violation::Kind::bichromatic_cycle);
        CHECK(v->cycle.size() == 6);
        CHECK(v->first == 1);
        CHECK(v->second == 2);

        const auto improper = verify_acyclic_coloring(c6, std::vector<Color>{1, 1, 2, 3, 2, 3});
        REQUIRE(improper.has_value());
        CHECK(improper->kind == Violation::Kind::improper);
        CHECK(improper->vertex == 1);
        CHECK(describe(*improper).find("vertex 2") != std::string::npos);

        CHECK_FALSE(verify_acyclic_coloring(c6, std::vector<Color>{1, 2, 1, 2, 3, 2}).has_value());
        CHECK_THROWS_AS(verify_acyclic_coloring(c6, std::vector<Color>{1, 2, 0, 2, 3, 2}), std::invalid_argument);

        // bichromatic 4-cycle in K4
        const Graph k4 = complete_graph(4);
        // edges: 01 02 03 12 13 23; 4-cycle 0-1-3-2-0 uses 01,13,23,02
        const auto four = verify_acyclic_coloring(k4, std::vector<Color>{1, 2, 3, 3, 2, 1});
        REQUIRE(four.has_value());
        CHECK(four->cycle.size() == 4);
    }
}
