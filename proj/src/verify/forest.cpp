#include "focus/verify/forest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "focus/condition.hpp"
#include "focus/errors.hpp"

namespace focus::verify {

namespace {

std::size_t count_vertices(const std::vector<ForestNode>& nodes)
{
    std::size_t n = nodes.size();
    for (const auto& node : nodes)
        n += count_vertices(node.children);
    return n;
}

std::size_t max_depth(const std::vector<ForestNode>& nodes)
{
    std::size_t d = 0;
    for (const auto& node : nodes)
        d = std::max(d, 1 + max_depth(node.children));
    return d;
}

void sort_nodes(std::vector<ForestNode>& nodes)
{
    for (auto& node : nodes)
        sort_nodes(node.children);
    std::sort(nodes.begin(), nodes.end(), [](const ForestNode& a, const ForestNode& b) { return a.label < b.label; });
}

void append_nodes(std::string& out, const std::vector<ForestNode>& nodes)
{
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k)
            out += ' ';
        out += std::to_string(nodes[k].label);
        if (!nodes[k].children.empty()) {
            out += '(';
            append_nodes(out, nodes[k].children);
            out += ')';
        }
    }
}

FlawSet label_set(const std::vector<ForestNode>& nodes)
{
    FlawSet out;
    for (const auto& node : nodes)
        out.push_back(node.label);
    std::sort(out.begin(), out.end());
    return out;
}

std::set<FlawSet> normalized(const SetFamily& family)
{
    std::set<FlawSet> out;
    for (FlawSet s : family) {
        std::sort(s.begin(), s.end());
        out.insert(std::move(s));
    }
    return out;
}

void check_children(const std::vector<ForestNode>& nodes, const std::vector<std::set<FlawSet>>& lists)
{
    for (const auto& node : nodes) {
        if (node.label < 0 || static_cast<std::size_t>(node.label) >= lists.size())
            throw std::invalid_argument("forest label " + std::to_string(node.label) + " out of range");
        const FlawSet kids = label_set(node.children);
        if (std::adjacent_find(kids.begin(), kids.end()) != kids.end())
            throw std::invalid_argument("children of a vertex labelled " + std::to_string(node.label) +
                                        " repeat a label");
        if (!lists[node.label].count(kids))
            throw std::invalid_argument("children of a vertex labelled " + std::to_string(node.label) +
                                        " are not a member of its list");
        check_children(node.children, lists);
    }
}

double node_product(const std::vector<ForestNode>& nodes, std::span<const double> psi,
                    const std::vector<double>& list_weight)
{
    double p = 1.0;
    for (const auto& node : nodes)
        p *= psi[node.label] / list_weight[node.label] * node_product(node.children, psi, list_weight);
    return p;
}

FlawSet sorted_copy(const FlawSet& s)
{
    FlawSet out = s;
    std::sort(out.begin(), out.end());
    return out;
}

class Sampler {
public:
    Sampler(Rng& rng, std::span<const double> psi, const std::vector<SetFamily>& lists, std::size_t depth_cap,
            std::size_t vertex_cap)
        : rng_(rng), psi_(psi), lists_(lists), depth_cap_(depth_cap), vertex_cap_(vertex_cap),
          weights_(lists.size())
    {
    }

    std::vector<ForestNode> spawn(const FlawSet& labels)
    {
        vertices_ += labels.size();
        if (vertices_ > vertex_cap_)
            throw CapExceeded("sampled forest exceeded " + std::to_string(vertex_cap_) + " vertices");
        std::vector<ForestNode> out;
        for (FlawId l : sorted_copy(labels))
            out.push_back({l, {}});
        return out;
    }

    void expand(ForestNode& node, std::size_t depth, bool& truncated)
    {
        const FlawSet& kids = draw(node.label);
        if (kids.empty())
            return;
        if (depth >= depth_cap_) {
            truncated = true;
            return;
        }
        node.children = spawn(kids);
        for (auto& child : node.children)
            expand(child, depth + 1, truncated);
    }

    const FlawSet& draw_from(const SetFamily& family, const std::vector<double>& weights)
    {
        if (family.empty())
            throw std::invalid_argument("cannot sample from an empty set family");
        return family[sample_index(rng_, weights)];
    }

    std::vector<double> family_weights(const SetFamily& family) const
    {
        std::vector<double> w;
        w.reserve(family.size());
        for (const FlawSet& s : family)
            w.push_back(family_weight(SetFamily{s}, psi_));
        return w;
    }

private:
    const FlawSet& draw(FlawId label)
    {
        if (label < 0 || static_cast<std::size_t>(label) >= lists_.size())
            throw std::out_of_range("label " + std::to_string(label) + " has no list family");
        if (weights_[label].empty())
            weights_[label] = family_weights(lists_[label]);
        return draw_from(lists_[label], weights_[label]);
    }

    Rng& rng_;
    std::span<const double> psi_;
    const std::vector<SetFamily>& lists_;
    std::size_t depth_cap_;
    std::size_t vertex_cap_;
    std::size_t vertices_ = 0;
    std::vector<std::vector<double>> weights_;
};

class Enumerator {
public:
    Enumerator(const std::vector<SetFamily>& lists, std::size_t cap) : cap_(cap)
    {
        for (const auto& family : lists) {
            SetFamily sorted;
            for (const auto& s : family)
                sorted.push_back(sorted_copy(s));
            lists_.push_back(std::move(sorted));
        }
    }

    /// All ways to hang one tree per label of `labels` with `total` vertices overall.
    std::vector<std::vector<ForestNode>> arrangements(const FlawSet& labels, std::size_t total)
    {
        std::vector<std::vector<ForestNode>> out;
        std::vector<ForestNode> current;
        arrange(labels, 0, total, current, out);
        return out;
    }

private:
    void arrange(const FlawSet& labels, std::size_t idx, std::size_t remaining, std::vector<ForestNode>& current,
                 std::vector<std::vector<ForestNode>>& out)
    {
        if (idx == labels.size()) {
            if (remaining == 0) {
                out.push_back(current);
                if (out.size() > cap_)
                    throw CapExceeded("forest enumeration exceeded " + std::to_string(cap_) + " entries");
            }
            return;
        }
        const std::size_t later = labels.size() - idx - 1;
        if (remaining < later + 1)
            return;
        for (std::size_t size = 1; size + later <= remaining; ++size) {
            const auto& options = trees(labels[idx], size);
            for (const auto& tree : options) {
                current.push_back(tree);
                arrange(labels, idx + 1, remaining - size, current, out);
                current.pop_back();
            }
        }
    }

    const std::vector<ForestNode>& trees(FlawId label, std::size_t size)
    {
        const auto key = std::make_pair(label, size);
        if (const auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (label < 0 || static_cast<std::size_t>(label) >= lists_.size())
            throw std::out_of_range("label " + std::to_string(label) + " has no list family");
        std::vector<ForestNode> built;
        for (const FlawSet& kids : lists_[label]) {
            if (kids.size() + 1 > size || (kids.empty() && size != 1))
                continue;
            for (auto& children : arrangements(kids, size - 1)) {
                built.push_back({label, std::move(children)});
                if (built.size() > cap_)
                    throw CapExceeded("forest enumeration exceeded " + std::to_string(cap_) + " entries");
            }
        }
        return memo_.emplace(key, std::move(built)).first->second;
    }

    std::vector<SetFamily> lists_;
    std::size_t cap_;
    std::map<std::pair<FlawId, std::size_t>, std::vector<ForestNode>> memo_;
};

std::strong_ordering compare_nodes(const std::vector<ForestNode>& a, const std::vector<ForestNode>& b)
{
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end(),
                                                  [](const ForestNode& x, const ForestNode& y) { return x <=> y; });
}

} // namespace

bool operator==(const ForestNode& a, const ForestNode& b)
{
    return a.label == b.label && a.children == b.children;
}

std::strong_ordering operator<=>(const ForestNode& a, const ForestNode& b)
{
    if (auto c = a.label <=> b.label; c != 0)
        return c;
    return compare_nodes(a.children, b.children);
}

bool operator==(const LabeledForest& a, const LabeledForest& b)
{
    return a.roots == b.roots;
}

std::strong_ordering operator<=>(const LabeledForest& a, const LabeledForest& b)
{
    return compare_nodes(a.roots, b.roots);
}

std::size_t LabeledForest::vertex_count() const noexcept
{
    return count_vertices(roots);
}

std::size_t LabeledForest::depth() const noexcept
{
    return max_depth(roots);
}

void canonicalize(LabeledForest& forest)
{
    sort_nodes(forest.roots);
}

std::string to_string(const LabeledForest& forest)
{
    if (forest.roots.empty())
        return "{}";
    std::string out;
    append_nodes(out, forest.roots);
    return out;
}

void check_forest(const LabeledForest& forest, const SetFamily& roots, const std::vector<SetFamily>& lists)
{
    const FlawSet root_labels = label_set(forest.roots);
    if (std::adjacent_find(root_labels.begin(), root_labels.end()) != root_labels.end())
        throw std::invalid_argument("root labels repeat");
    if (!normalized(roots).count(root_labels))
        throw std::invalid_argument("root labels are not a member of Roots");
    std::vector<std::set<FlawSet>> norm;
    norm.reserve(lists.size());
    for (const auto& family : lists)
        norm.push_back(normalized(family));
    check_children(forest.roots, norm);
}

double forest_probability(const LabeledForest& forest, std::span<const double> psi, const SetFamily& roots,
                          const std::vector<SetFamily>& lists)
{
    if (psi.size() < lists.size())
        throw std::invalid_argument("psi must have an entry per flaw");
    check_forest(forest, roots, lists);
    std::vector<double> list_weight;
    list_weight.reserve(lists.size());
    for (const auto& family : lists)
        list_weight.push_back(family_weight(family, psi));
    return node_product(forest.roots, psi, list_weight) / family_weight(roots, psi);
}

LabeledForest sample_forest(Rng& rng, std::span<const double> psi, const SetFamily& roots,
                            const std::vector<SetFamily>& lists, std::size_t depth_cap, std::size_t vertex_cap)
{
    Sampler sampler(rng, psi, lists, depth_cap, vertex_cap);
    const FlawSet& root_labels = sampler.draw_from(roots, sampler.family_weights(roots));
    LabeledForest forest;
    forest.roots = sampler.spawn(root_labels);
    for (auto& root : forest.roots)
        sampler.expand(root, 0, forest.truncated);
    return forest;
}

LabeledForest sample_forest(std::uint64_t seed, std::span<const double> psi, const SetFamily& roots,
                            const std::vector<SetFamily>& lists, std::size_t depth_cap)
{
    Rng rng(seed);
    return sample_forest(rng, psi, roots, lists, depth_cap);
}

std::vector<LabeledForest> enumerate_forests(std::size_t t, const SetFamily& roots,
                                             const std::vector<SetFamily>& lists, std::size_t cap)
{
    Enumerator en(lists, cap);
    std::vector<LabeledForest> out;
    std::set<FlawSet> seen;
    for (const FlawSet& r : roots) {
        FlawSet labels = sorted_copy(r);
        if (!seen.insert(labels).second)
            continue;
        if (labels.size() > t || (labels.empty() && t != 0))
            continue;
        for (auto& trees : en.arrangements(labels, t)) {
            out.push_back({std::move(trees), false});
            if (out.size() > cap)
                throw CapExceeded("forest enumeration exceeded " + std::to_string(cap) + " forests");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ForestWeightSum enumerate_forest_weight_sum(std::size_t t, std::span<const double> gamma,
                                            std::span<const double> psi, const SetFamily& roots,
                                            const std::vector<SetFamily>& lists, std::size_t cap)
{
    const auto values = evaluate_condition(gamma, psi, lists);
    const double max_zeta = 1.0 - values.delta;

    ForestWeightSum out;
    for (const auto& forest : enumerate_forests(t, roots, lists, cap)) {
        double w = 1.0;
        std::vector<const ForestNode*> stack;
        for (const auto& r : forest.roots)
            stack.push_back(&r);
        while (!stack.empty()) {
            const ForestNode* node = stack.back();
            stack.pop_back();
            w *= gamma[node->label];
            for (const auto& c : node->children)
                stack.push_back(&c);
        }
        out.lhs += w;
    }
    out.rhs = std::pow(max_zeta, static_cast<double>(t)) * family_weight(roots, psi);
    return out;
}

} // namespace focus::verify
