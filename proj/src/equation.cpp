#include "diffiety/equation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "diffiety/parser.hpp"

namespace diffiety {

NormalFormReport check_normal_form(const JetSpace& space, int leading, const Section& rhs) {
    NormalFormReport rep;
    auto issue = [&rep](const std::string& s) {
        rep.ok = false;
        rep.issues.push_back(s);
    };
    if (space.n() < 1) issue("no independent variables");
    if (space.m() < 1) issue("no dependent variables");
    if (leading < 0 || leading >= space.n()) {
        issue("leading variable index out of range");
        return rep;
    }
    if (rhs.size() != static_cast<std::size_t>(space.m())) {
        issue("expected one equation per dependent variable");
        return rep;
    }
    for (int j = 0; j < space.m(); ++j) {
        for (const auto& c : rhs[static_cast<std::size_t>(j)].coords()) {
            if (c.is_independent()) continue;
            if (c.sigma.count(static_cast<std::size_t>(leading)) > 0)
                issue("right-hand side for " + space.dependents[static_cast<std::size_t>(j)] +
                      "_" + space.independents[static_cast<std::size_t>(leading)] +
                      " depends on " + space.coord_name(c) + "; system is not in solved form");
        }
    }
    return rep;
}

EquationSystem::EquationSystem(JetSpace space, Section rhs, int leading, std::string name)
    : space_(std::move(space)), rhs_(std::move(rhs)),
      leading_(leading < 0 ? static_cast<int>(space_.independents.size()) - 1 : leading),
      name_(std::move(name)) {
    NormalFormReport rep = check_normal_form(space_, leading_, rhs_);
    if (!rep.ok) {
        std::string msg = "not an evolution system in solved form";
        for (const auto& s : rep.issues) msg += "; " + s;
        throw shape_error(msg);
    }
}

bool EquationSystem::is_internal(const Expr& e) const {
    for (const auto& c : e.coords())
        if (!is_internal_coord(c)) return false;
    return true;
}

Expr EquationSystem::expanded_rhs(int j, const MultiIndex& sigma) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find({j, sigma});
        if (it != cache_.end()) return it->second;
    }
    Expr val;
    if (sigma.order() == 0) {
        val = rhs_[static_cast<std::size_t>(j)];
    } else {
        int mu = -1;
        for (int v = 0; v < space_.n(); ++v)
            if (v != leading_ && sigma.count(static_cast<std::size_t>(v)) > 0) {
                mu = v;
                break;
            }
        if (mu < 0) mu = leading_;
        Expr inner = expanded_rhs(j, *sigma.minus(static_cast<std::size_t>(mu)));
        val = total_derivative_internal(inner, static_cast<std::size_t>(mu));
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(std::make_pair(j, sigma), val);
    return val;
}

Expr EquationSystem::total_derivative_internal(const Expr& e0, std::size_t mu) const {
    Expr e = is_internal(e0) ? e0 : restrict(e0);
    Expr out = e.partial(JetCoord::independent(static_cast<int>(mu)));
    for (const auto& c : e.coords()) {
        if (c.is_independent()) continue;
        Expr de = e.partial(c);
        if (de.is_zero()) continue;
        if (static_cast<int>(mu) != leading_) {
            if (c.sigma.order() + 1 > cap_)
                throw prolongation_limit_error(
                    "internal rewriting for system '" + name_ + "' exceeds the jet order cap " +
                    std::to_string(cap_));
            out += Expr::coordinate(JetCoord::jet(c.dep, c.sigma.plus(mu))) * de;
        } else {
            out += expanded_rhs(c.dep, c.sigma) * de;
        }
    }
    return out;
}

Expr EquationSystem::total_derivative_internal(const Expr& e, const MultiIndex& sigma) const {
    Expr out = e;
    for (std::size_t mu = 0; mu < sigma.width(); ++mu)
        for (std::uint32_t r = 0; r < sigma.count(mu); ++r)
            out = total_derivative_internal(out, mu);
    return out;
}

Expr EquationSystem::restrict(const Expr& e) const {
    std::map<JetCoord, Expr> rules;
    for (const auto& c : e.coords()) {
        if (c.is_independent()) continue;
        if (c.sigma.count(static_cast<std::size_t>(leading_)) == 0) continue;
        if (c.sigma.order() > cap_)
            throw prolongation_limit_error("coordinate " + space_.coord_name(c) +
                                           " exceeds the jet order cap " + std::to_string(cap_));
        rules[c] = expanded_rhs(c.dep, *c.sigma.minus(static_cast<std::size_t>(leading_)));
    }
    if (rules.empty()) return e;
    return e.substitute(rules);
}

Section EquationSystem::restrict(const Section& f) const {
    Section out;
    out.reserve(f.size());
    for (const auto& e : f) out.push_back(restrict(e));
    return out;
}

std::vector<JetCoord> EquationSystem::internal_coords(int max_order) const {
    std::vector<JetCoord> out;
    for (int j = 0; j < space_.m(); ++j)
        for (const auto& sigma : multiindices_up_to(space_.n(), max_order)) {
            if (sigma.count(static_cast<std::size_t>(leading_)) > 0) continue;
            out.push_back(JetCoord::jet(j, sigma));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/* ---------- system file parsing ---------- */

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool valid_ident(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

}  // namespace

EquationSystem parse_system(const std::string& text) {
    std::vector<std::pair<std::size_t, std::string>> lines; /* (offset, stripped line) */
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string::npos) end = text.size();
            std::string line = text.substr(start, end - start);
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            lines.push_back({start, trim(line)});
            if (end == text.size()) break;
            start = end + 1;
        }
    }

    std::string section, name, leading_name;
    std::vector<std::string> independents, dependents;
    std::vector<std::pair<std::size_t, std::string>> equation_lines;

    for (const auto& [off, line] : lines) {
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line == "[system]" || line == "[equations]")
                section = line;
            else
                throw parse_error("unknown section " + line, off);
            continue;
        }
        if (section == "[system]") {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw parse_error("expected key = value", off);
            std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
            if (key == "name")
                name = value;
            else if (key == "independent")
                independents = split_list(value);
            else if (key == "dependent")
                dependents = split_list(value);
            else if (key == "leading")
                leading_name = value;
            else
                throw parse_error("unknown key '" + key + "' in [system]", off);
        } else if (section == "[equations]") {
            equation_lines.push_back({off, line});
        } else {
            throw parse_error("content before any section header", off);
        }
    }

    if (independents.empty()) throw parse_error("missing 'independent =' in [system]", 0);
    if (dependents.empty()) throw parse_error("missing 'dependent =' in [system]", 0);
    for (const auto& v : independents)
        if (v.size() != 1 || !std::isalpha(static_cast<unsigned char>(v[0])))
            throw parse_error("independent variable '" + v + "' must be a single letter", 0);
    for (const auto& v : dependents)
        if (!valid_ident(v)) throw parse_error("invalid dependent variable name '" + v + "'", 0);

    JetSpace space{independents, dependents};
    int leading = space.n() - 1;
    if (!leading_name.empty()) {
        leading = space.find_independent(leading_name);
        if (leading < 0)
            throw parse_error("leading variable '" + leading_name + "' is not independent", 0);
    }

    Section rhs(dependents.size(), Expr(0));
    std::vector<bool> seen(dependents.size(), false);
    for (const auto& [off, line] : equation_lines) {
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw parse_error("expected u_t = expression", off);
        std::string lhs = trim(line.substr(0, eq));
        std::size_t us = lhs.find('_');
        if (us == std::string::npos)
            throw parse_error("left-hand side must be a first derivative along the leading "
                              "variable, e.g. u_t",
                              off);
        std::string dep = lhs.substr(0, us), sub = lhs.substr(us + 1);
        int j = space.find_dependent(dep);
        if (j < 0) throw parse_error("unknown dependent variable '" + dep + "'", off);
        if (sub != space.independents[static_cast<std::size_t>(leading)])
            throw parse_error("equations must be solved for the first " +
                                  space.independents[static_cast<std::size_t>(leading)] +
                                  "-derivative",
                              off);
        if (seen[static_cast<std::size_t>(j)])
            throw parse_error("duplicate equation for " + dep, off);
        seen[static_cast<std::size_t>(j)] = true;
        try {
            rhs[static_cast<std::size_t>(j)] = parse_expression(line.substr(eq + 1), space);
        } catch (parse_error& pe) {
            throw parse_error(std::string(pe.what()) + " (in equation for " + dep + ")",
                              off + eq + 1 + pe.pos);
        }
    }
    for (std::size_t j = 0; j < seen.size(); ++j)
        if (!seen[j]) throw parse_error("missing equation for " + dependents[j], 0);

    return EquationSystem(space, rhs, leading, name);
}

}  // namespace diffiety
