#include "cli/family_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "focus/errors.hpp"

namespace focus::cli {

namespace {

double parse_positive(const std::string& tok, std::size_t line)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value))
        throw ParseError(line, "expected a decimal number, got '" + tok + "'");
    if (!(value > 0.0))
        throw ParseError(line, "value must be positive, got '" + tok + "'");
    return value;
}

std::vector<std::string> tokens_of(const std::string& raw)
{
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

} // namespace

FamilySpec parse_family(std::istream& in, const std::vector<std::string>& names)
{
    FamilySpec spec;
    std::unordered_map<std::string, FlawId> index;
    auto declare = [&](const std::vector<std::string>& list) {
        spec.names = list;
        spec.lists.assign(list.size(), {});
        spec.gamma.assign(list.size(), std::nullopt);
        for (std::size_t i = 0; i < list.size(); ++i)
            index.emplace(list[i], static_cast<FlawId>(i));
    };
    if (!names.empty())
        declare(names);
    bool declared = !names.empty();
    bool saw_flaws = false;

    std::string raw;
    std::size_t lineno = 0;
    auto lookup = [&](const std::string& name) {
        const auto it = index.find(name);
        if (it == index.end())
            throw ParseError(lineno, "unknown flaw '" + name + "'");
        return it->second;
    };
    auto to_set = [&](const std::vector<std::string>& toks, std::size_t from) {
        FlawSet s;
        for (std::size_t k = from; k < toks.size(); ++k)
            s.push_back(lookup(toks[k]));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ParseError(lineno, "a set names the same flaw twice");
        return s;
    };
    std::vector<std::set<FlawSet>> seen_lists;
    std::set<FlawSet> seen_roots;

    while (std::getline(in, raw)) {
        ++lineno;
        const auto tok = tokens_of(raw);
        if (tok.empty())
            continue;
        const std::string& cmd = tok[0];
        if (cmd == "flaws") {
            if (saw_flaws)
                throw ParseError(lineno, "duplicate 'flaws' line");
            saw_flaws = true;
            std::vector<std::string> list(tok.begin() + 1, tok.end());
            if (list.empty())
                throw ParseError(lineno, "'flaws' needs at least one name");
            if (std::set<std::string>(list.begin(), list.end()).size() != list.size())
                throw ParseError(lineno, "'flaws' repeats a name");
            if (declared) {
                if (std::set<std::string>(list.begin(), list.end()) !=
                    std::set<std::string>(spec.names.begin(), spec.names.end()))
                    throw ParseError(lineno, "'flaws' does not match the instance's flaws");
                continue;
            }
            declare(list);
            declared = true;
            continue;
        }
        if (!declared)
            throw ParseError(lineno, "'" + cmd + "' before 'flaws'");
        if (seen_lists.empty())
            seen_lists.resize(spec.names.size());
        if (cmd == "roots") {
            FlawSet s = to_set(tok, 1);
            if (!seen_roots.insert(s).second)
                throw ParseError(lineno, "duplicate roots set");
            if (!spec.roots)
                spec.roots.emplace();
            spec.roots->push_back(std::move(s));
        } else if (cmd == "list") {
            if (tok.size() < 2)
                throw ParseError(lineno, "usage: list NAME [members...]");
            const FlawId owner = lookup(tok[1]);
            FlawSet s = to_set(tok, 2);
            if (!seen_lists[owner].insert(s).second)
                throw ParseError(lineno, "duplicate set in the list of '" + tok[1] + "'");
            spec.lists[owner].push_back(std::move(s));
        } else if (cmd == "gamma") {
            if (tok.size() != 3)
                throw ParseError(lineno, "usage: gamma NAME value");
            spec.gamma[lookup(tok[1])] = parse_positive(tok[2], lineno);
        } else {
            throw ParseError(lineno, "unknown directive '" + cmd + "'");
        }
    }
    if (!declared)
        throw ParseError(lineno, "missing 'flaws' line");
    for (auto& family : spec.lists)
        if (family.empty())
            family.push_back({});
    return spec;
}

FamilySpec load_family(const std::string& path, const std::vector<std::string>& names)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_family(in, names);
}

std::vector<double> parse_psi(const std::string& spec, const std::vector<std::string>& names)
{
    if (spec.rfind("file:", 0) != 0)
        return std::vector<double>(names.size(), parse_positive(spec, 0));

    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i)
        index.emplace(names[i], i);
    std::vector<double> psi(names.size(), 0.0);
    std::vector<char> given(names.size(), 0);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto tok = tokens_of(raw);
        if (tok.empty())
            continue;
        if (tok.size() != 2)
            throw ParseError(lineno, "usage: NAME value");
        const auto it = index.find(tok[0]);
        if (it == index.end())
            throw ParseError(lineno, "unknown flaw '" + tok[0] + "'");
        if (given[it->second])
            throw ParseError(lineno, "duplicate psi for '" + tok[0] + "'");
        psi[it->second] = parse_positive(tok[1], lineno);
        given[it->second] = 1;
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!given[i])
            throw ParseError(lineno, "no psi value for '" + names[i] + "'");
    return psi;
}

} // namespace focus::cli
