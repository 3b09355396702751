#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "focus/analysis.hpp"
#include "focus/condition.hpp"
#include "focus/errors.hpp"
#include "focus/verify/forest.hpp"
#include "focus/verify/witness.hpp"
#include "support.hpp"

using namespace focus;
using namespace focus::verify;
using focus::testing::data_path;
using focus::testing::instance_from;

namespace {

ExplicitInstance two_coin_from11()
{
    return instance_from("states 4\ntheta 3 1\nflaw A 2 3\nflaw B 1 3\n"
                         "arc A 2 0 .5\narc A 2 2 .5\narc A 3 1 .5\narc A 3 3 .5\n"
                         "arc B 1 0 .5\narc B 1 1 .5\narc B 3 2 .5\narc B 3 3 .5\n");
}

double prob_of(const WitnessDistribution& d, const FlawSequence& w)
{
    const auto it = d.entries.find(w);
    return it == d.entries.end() ? 0.0 : it->second;
}

} // namespace

TEST_SUITE("verify")
{
    TEST_CASE("witness distribution of the two-coin walk")
    {
        const ExplicitWalkProblem problem(load_instance(data_path("two_coin.inst")));
        const auto d1 = witness_distribution(problem, Strategy::simple, 1);
        CHECK(prob_of(d1, {0}) == doctest::Approx(0.5));
        CHECK(prob_of(d1, {1}) == doctest::Approx(0.25));
        CHECK(d1.halt_mass == doctest::Approx(0.25));

        const auto d0 = witness_distribution(problem, Strategy::simple, 0);
        REQUIRE(d0.entries.size() == 1);
        CHECK(prob_of(d0, {}) == doctest::Approx(1.0));

        const auto flawless = instance_from("states 2\ntheta 0 1\nflaw F 1\narc F 1 0 1\n");
        for (std::size_t t = 1; t < 4; ++t)
            CHECK(witness_distribution(ExplicitWalkProblem(flawless), Strategy::simple, t).halt_mass ==
                  doctest::Approx(1.0));
    }

    TEST_CASE("witness distribution matches path expansion")
    {
        Rng rng(23);
        for (int rep = 0; rep < 25; ++rep) {
            const auto inst = focus::testing::random_instance(rng, 6, 3, rep % 2 == 0);
            for (Strategy strategy : {Strategy::simple, Strategy::recursive}) {
                const ExplicitWalkProblem problem(inst);
                focus::testing::WitnessOracle oracle(inst, strategy);
                double last_halt = 0.0;
                for (std::size_t t = 0; t <= 4; ++t) {
                    double halt = 0.0;
                    const auto expected = oracle.run(t, halt);
                    const auto got = witness_distribution(problem, strategy, t);
                    CHECK(got.halt_mass == doctest::Approx(halt).epsilon(1e-12));
                    CHECK(got.total() == doctest::Approx(1.0).epsilon(1e-9));
                    CHECK(got.halt_mass >= last_halt - 1e-12);
                    last_halt = got.halt_mass;
                    for (const auto& [w, p] : expected)
                        CHECK(prob_of(got, w) == doctest::Approx(p).epsilon(1e-12));
                    for (const auto& [w, p] : got.entries)
                        CHECK(expected.count(w));
                }
            }
        }
    }

    TEST_CASE("recursive walk witnesses on a chained instance")
    {
        // addressing A can introduce B; the recursive walk must chase B before
        // returning to the top-level choice
        const auto inst = instance_from(R"(states 4
theta 3 1
flaw A 1 3
flaw B 2
arc A 1 0 0.5
arc A 1 2 0.5
arc A 3 2 0.5
arc A 3 0 0.5
arc B 2 0 0.5
arc B 2 1 0.5
)");
        for (Strategy strategy : {Strategy::simple, Strategy::recursive}) {
            focus::testing::WitnessOracle oracle(inst, strategy);
            double halt = 0.0;
            const auto expected = oracle.run(5, halt);
            const auto got = witness_distribution(ExplicitWalkProblem(inst), strategy, 5);
            for (const auto& [w, p] : expected)
                CHECK(prob_of(got, w) == doctest::Approx(p).epsilon(1e-12));
        }
    }

    TEST_CASE("enumeration cap is an error")
    {
        Rng rng(2);
        const auto inst = focus::testing::random_instance(rng, 8, 3);
        CHECK_THROWS_AS(witness_distribution(ExplicitWalkProblem(inst), Strategy::simple, 6, 3), CapExceeded);
    }

    TEST_CASE("witness bound")
    {
        const auto rep = verify_witness_bound(ExplicitWalkProblem(two_coin_from11()), Strategy::simple, 1);
        REQUIRE(rep.assertions.size() == 1);
        CHECK(rep.assertions[0].lhs == doctest::Approx(1.0));
        CHECK(rep.assertions[0].rhs == doctest::Approx(2.0));
        CHECK(rep.passed());

        // theta = mu: tight
        const auto tight = verify_witness_bound(ExplicitWalkProblem(load_instance(data_path("two_coin.inst"))),
                                                Strategy::simple, 1);
        CHECK(tight.passed());
        CHECK(tight.worst_slack() == doctest::Approx(0.0).epsilon(1e-12));

        std::ostringstream out;
        tight.write(out);
        CHECK(out.str().find("PASS") != std::string::npos);
    }

    TEST_CASE("atomic oracle")
    {
        const auto two = load_instance(data_path("two_coin.inst"));
        const auto rep = verify_atomic_oracle(two);
        CHECK(rep.passed());
        CHECK(rep.assertions.size() > 0);
        CHECK_THROWS_AS(verify_atomic_oracle(load_instance(data_path("non_atomic.inst"))), PreconditionError);
        CHECK_THROWS_AS(verify_atomic_oracle(load_instance(data_path("biased_coin.inst"))), PreconditionError);

        const auto product = focus::testing::product_instance({0.2, 0.7, 0.4}, {{{0, 1}, {1, 1}}, {{2}, {0}}});
        CHECK(verify_atomic_oracle(product).passed());
    }

    TEST_CASE("trajectory window")
    {
        const auto two = load_instance(data_path("two_coin.inst"));
        // A and B overlap at state 3: B is addressed first with probability 1/4, not mu(B) = 1/2
        const auto rep = verify_trajectory_window(ExplicitWalkProblem(two), Strategy::simple, 3);
        CHECK_FALSE(rep.passed());
        const auto disjoint = instance_from("states 4\ntheta 0 1\ntheta 1 1\ntheta 2 1\ntheta 3 1\nflaw A 3\n"
                                            "flaw B 1\narc A 3 0 .25\narc A 3 1 .25\narc A 3 2 .25\narc A 3 3 .25\n"
                                            "arc B 1 0 .25\narc B 1 1 .25\narc B 1 2 .25\narc B 1 3 .25\n");
        for (Strategy s : {Strategy::simple, Strategy::recursive}) {
            const auto ok = verify_trajectory_window(ExplicitWalkProblem(disjoint), s, 5);
            CHECK(ok.passed());
            CHECK(ok.worst_slack() == doctest::Approx(0.0).epsilon(1e-12));
        }
        const auto point = verify_trajectory_window(ExplicitWalkProblem(two_coin_from11()), Strategy::simple, 3);
        CHECK(point.passed());
        CHECK_THROWS_AS(verify_trajectory_window(ExplicitWalkProblem(load_instance(data_path("non_atomic.inst"))),
                                                 Strategy::simple, 2),
                        PreconditionError);
    }

    TEST_CASE("forest probability")
    {
        const SetFamily roots{{}, {0}};
        const std::vector<SetFamily> lists{{{}}};
        const std::vector<double> psi{1.0};
        const LabeledForest empty;
        const LabeledForest single{{{0, {}}}, false};
        CHECK(forest_probability(single, psi, roots, lists) == doctest::Approx(0.5));
        CHECK(forest_probability(empty, psi, roots, lists) == doctest::Approx(0.5));
        // doubling psi moves the mass
        CHECK(forest_probability(single, std::vector<double>{2.0}, roots, lists) == doctest::Approx(2.0 / 3.0));

        CHECK(forest_probability(empty, psi, {{}}, lists) == doctest::Approx(1.0));
        CHECK_THROWS_AS(forest_probability(single, psi, {{}}, lists), std::invalid_argument);
        const LabeledForest bad{{{0, {{0, {}}}}}, false};
        CHECK_THROWS_AS(forest_probability(bad, psi, roots, lists), std::invalid_argument);
        CHECK(to_string(single) == "0");
        CHECK(to_string(empty) == "{}");
    }

    TEST_CASE("forest enumeration")
    {
        // List(0) = {{}, {1}}, List(1) = {{}}: trees are 0, 0(1), 1
        const SetFamily roots{{}, {0}, {1}, {0, 1}};
        const std::vector<SetFamily> lists{{{}, {1}}, {{}}};
        CHECK(enumerate_forests(0, roots, lists).size() == 1);
        const auto one = enumerate_forests(1, roots, lists);
        CHECK(one.size() == 2);
        const auto two = enumerate_forests(2, roots, lists);
        REQUIRE(two.size() == 2);
        CHECK(to_string(two[0]) == "0 1");
        CHECK(to_string(two[1]) == "0(1)");
        const auto three = enumerate_forests(3, roots, lists);
        REQUIRE(three.size() == 1);
        CHECK(to_string(three[0]) == "0(1) 1");
        CHECK(enumerate_forests(4, roots, lists).empty());

        // every forest of every size: probabilities sum to 1 because the lists force leaves
        const std::vector<double> psi{0.7, 1.9};
        double total = 0.0;
        for (std::size_t t = 0; t <= 4; ++t)
            for (const auto& f : enumerate_forests(t, roots, lists))
                total += forest_probability(f, psi, roots, lists);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        const std::vector<SetFamily> rich{{{}, {0}, {1}, {0, 1}}, {{}, {0}, {1}, {0, 1}}};
        CHECK_THROWS_AS(enumerate_forests(6, {{0}, {1}, {0, 1}}, rich, 3), CapExceeded);
    }

    TEST_CASE("forest canonical order")
    {
        LabeledForest f{{{2, {{1, {}}, {0, {}}}}, {0, {}}}, false};
        canonicalize(f);
        CHECK(to_string(f) == "0 2(0 1)");
        CHECK(f.vertex_count() == 4);
        CHECK(f.depth() == 2);
    }

    TEST_CASE("forest sampler")
    {
        const SetFamily roots{{}, {0}};
        const std::vector<SetFamily> leaves{{{}}};
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto f = sample_forest(seed, std::vector<double>{1.0}, roots, leaves, 10);
            CHECK(f.depth() <= 1);
            CHECK_FALSE(f.truncated);
            CHECK(sample_forest(seed, std::vector<double>{1.0}, {{}}, leaves, 10).roots.empty());
        }
        // a chain that never stops gets truncated
        const auto deep = sample_forest(1, std::vector<double>{1.0}, {{0}}, {{{0}}}, 5);
        CHECK(deep.truncated);
        CHECK(deep.depth() == 6);

        Rng rng(42);
        int singles = 0;
        const int n = 100000;
        for (int k = 0; k < n; ++k)
            singles += sample_forest(rng, std::vector<double>{1.0}, roots, leaves, 10).roots.size() == 1;
        const double sigma = std::sqrt(0.25 / n);
        CHECK(std::abs(singles / static_cast<double>(n) - 0.5) <= 3 * sigma);
    }

    TEST_CASE("forest weight sum")
    {
        const SetFamily roots{{}, {0}};
        const std::vector<SetFamily> lists{{{}, {0}}};
        const std::vector<double> psi{1.0};
        // gamma chosen so that zeta = 1/2: gamma * (1 + psi) / psi = 1/2
        const std::vector<double> gamma{0.25};
        const auto s0 = enumerate_forest_weight_sum(0, gamma, psi, roots, lists);
        CHECK(s0.lhs == doctest::Approx(1.0));
        CHECK(s0.rhs == doctest::Approx(2.0));
        for (std::size_t t = 1; t <= 5; ++t) {
            const auto s = enumerate_forest_weight_sum(t, gamma, psi, roots, lists);
            // single chain per t
            CHECK(s.lhs == doctest::Approx(std::pow(0.25, t)));
            CHECK(s.rhs == doctest::Approx(std::pow(0.5, t) * 2.0));
            CHECK(s.holds());
        }
    }
}
