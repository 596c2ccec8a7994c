#include "casimir/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "casimir/errors.hpp"
#include "casimir/units.hpp"

namespace casimir {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> schema{
    {"cavity", {"gap", "width", "gap_meters"}},
    {"left", {"model", "omega0", "omegaPl", "gamma0"}},
    {"right", {"model", "omega0", "omegaPl", "gamma0"}},
    {"state", {"type", "beta", "temperature", "temperature_kelvin", "sigma", "omega_center", "scale", "xi"}},
    {"baths",
     {"beta_left", "temperature_left", "temperature_left_kelvin", "beta_right", "temperature_right",
      "temperature_right_kelvin"}},
    {"quadrature",
     {"rel_tol", "abs_tol", "panel_width", "tail_threshold", "max_panels", "k_min", "max_terms", "max_subdivisions",
      "threads", "reg_eta0", "reg_levels", "panel_floor"}},
    {"sweep", {"sigma", "sigma_geometric", "omega_center", "scale"}},
    {"limits", {"gaps", "widths", "xi"}},
};

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// boost's ini reader keeps no positions, so keys are located with a second pass
class Reader {
public:
    Reader(const std::string& text, std::string name) : name_(std::move(name))
    {
        std::istringstream in(text);
        try {
            pt::ini_parser::read_ini(in, tree_);
        } catch (const pt::ini_parser_error& e) {
            throw ConfigError(fmt::format("{}:{}: {}", name_, e.line(), e.message()));
        }
        std::istringstream again(text);
        std::string line, section;
        for (int no = 1; std::getline(again, line); ++no) {
            line = trim(line);
            if (line.empty() || line[0] == ';' || line[0] == '#') continue;
            if (line.front() == '[') {
                section = trim(line.substr(1, line.find(']') - 1));
                lines_[section] = no;
                continue;
            }
            const auto eq = line.find('=');
            if (eq != std::string::npos) lines_[section + "." + trim(line.substr(0, eq))] = no;
        }
        for (const auto& [sec, body] : tree_) {
            if (body.empty() && !body.data().empty())
                throw ConfigError(fmt::format("{}: key '{}' outside of any section", where(sec), sec));
            const auto it = schema.find(sec);
            if (it == schema.end()) throw ConfigError(fmt::format("{}: unknown section [{}]", where(sec), sec));
            for (const auto& [key, v] : body)
                if (!it->second.count(key))
                    throw ConfigError(fmt::format("{}: unknown key '{}' in section [{}]", where(sec + "." + key), key, sec));
        }
    }

    bool has(const std::string& sec, const std::string& key) const { return tree_.get_child_optional(path(sec, key)).has_value(); }
    bool has_section(const std::string& sec) const { return tree_.get_child_optional(pt::ptree::path_type(sec, '\x1f')).has_value(); }

    std::string text(const std::string& sec, const std::string& key) const
    {
        const auto v = tree_.get_optional<std::string>(path(sec, key));
        if (!v) throw ConfigError(fmt::format("{}: missing required key '{}' in section [{}]", name_, key, sec));
        return trim(*v);
    }

    double number(const std::string& sec, const std::string& key) const { return parse(sec, key, text(sec, key)); }

    double number_or(const std::string& sec, const std::string& key, double fallback) const
    {
        return has(sec, key) ? number(sec, key) : fallback;
    }

    long integer_or(const std::string& sec, const std::string& key, long fallback) const
    {
        if (!has(sec, key)) return fallback;
        const double v = number(sec, key);
        if (v != std::floor(v) || std::abs(v) > 1e15)
            throw ConfigError(fmt::format("{}: [{}] {} must be an integer (got {})", where(sec + "." + key), sec, key, v));
        return static_cast<long>(v);
    }

    std::vector<double> list(const std::string& sec, const std::string& key) const
    {
        std::vector<double> out;
        std::istringstream in(text(sec, key));
        std::string item;
        while (std::getline(in, item, ',')) out.push_back(parse(sec, key, trim(item)));
        if (out.empty()) throw ConfigError(fmt::format("{}: [{}] {} is empty", where(sec + "." + key), sec, key));
        return out;
    }

    std::string where(const std::string& key) const
    {
        const auto it = lines_.find(key);
        return it == lines_.end() ? name_ : fmt::format("{}:{}", name_, it->second);
    }

    const std::string& name() const { return name_; }

private:
    static pt::ptree::path_type path(const std::string& sec, const std::string& key)
    {
        return pt::ptree::path_type(sec + '\x1f' + key, '\x1f');
    }

    double parse(const std::string& sec, const std::string& key, const std::string& s) const
    {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty())
            throw ConfigError(fmt::format("{}: [{}] {}: cannot read '{}' as a number", where(sec + "." + key), sec, key, s));
        return v;
    }

    std::string name_;
    pt::ptree tree_;
    std::map<std::string, int> lines_;
};

Material read_material(const Reader& r, const std::string& sec)
{
    if (!r.has_section(sec)) throw ConfigError(fmt::format("{}: missing required section [{}]", r.name(), sec));
    const std::string model = r.has(sec, "model") ? r.text(sec, "model") : "drude_lorentz";
    Model m;
    if (model == "drude_lorentz")
        m = Model::drude_lorentz;
    else if (model == "static_nd")
        m = Model::static_nd;
    else
        throw ConfigError(fmt::format("{}: [{}] model must be drude_lorentz or static_nd (got '{}')",
                                      r.where(sec + ".model"), sec, model));
    const double g = m == Model::drude_lorentz ? r.number(sec, "gamma0") : r.number_or(sec, "gamma0", 0.0);
    try {
        return make_material(r.number(sec, "omega0"), r.number(sec, "omegaPl"), g, m);
    } catch (const DomainError& e) {
        throw ConfigError(fmt::format("{}: [{}] {}", r.where(sec), sec, e.what()));
    }
}

// exactly one of beta / temperature / temperature_kelvin (with the given suffix)
std::optional<double> read_beta(const Reader& r, const std::string& sec, const std::string& suffix,
                                std::optional<double> length_unit)
{
    const std::string kb = "beta" + suffix, kt = "temperature" + suffix, kk = "temperature" + suffix + "_kelvin";
    const int given = r.has(sec, kb) + r.has(sec, kt) + r.has(sec, kk);
    if (given == 0) return std::nullopt;
    if (given > 1)
        throw ConfigError(fmt::format("{}: [{}] give only one of {}, {}, {}", r.where(sec), sec, kb, kt, kk));
    double beta;
    std::string key;
    if (r.has(sec, kb)) {
        key = kb;
        beta = r.number(sec, kb);
    } else if (r.has(sec, kt)) {
        key = kt;
        beta = 1.0 / r.number(sec, kt);
    } else {
        key = kk;
        if (!length_unit)
            throw ConfigError(fmt::format("{}: [{}] {} needs [cavity] gap_meters for the conversion",
                                          r.where(sec + "." + kk), sec, kk));
        beta = 1.0 / units::kelvin_to_natural(r.number(sec, kk), *length_unit);
    }
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ConfigError(fmt::format("{}: [{}] {} gives a non-positive inverse temperature", r.where(sec + "." + key), sec, key));
    return beta;
}

FieldState read_state(const Reader& r, std::optional<double> length_unit)
{
    const std::string type = r.text("state", "type");
    FieldState s;
    if (type == "vacuum") {
        s = Vacuum{};
    } else if (type == "thermal") {
        const auto b = read_beta(r, "state", "", length_unit);
        if (!b) throw ConfigError(fmt::format("{}: missing required key 'beta' (or temperature) in section [state]", r.name()));
        s = Thermal{*b};
    } else if (type == "squeezed_band") {
        s = SqueezedBand{r.number("state", "sigma"), r.number("state", "omega_center"), r.number_or("state", "scale", 1.0)};
    } else if (type == "squeezed_delta") {
        s = SqueezedDelta{r.number("state", "omega_center")};
    } else if (type == "squeezed_const") {
        s = SqueezedConst{r.number("state", "xi")};
    } else {
        throw ConfigError(fmt::format("{}: [state] unknown type '{}'", r.where("state.type"), type));
    }
    try {
        validate(s);
    } catch (const DomainError& e) {
        throw ConfigError(fmt::format("{}: [state] {}", r.where("state"), e.what()));
    }
    return s;
}

void require_ascending_positive(const Reader& r, const std::vector<double>& v, const std::string& sec,
                                const std::string& key)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i]))
            throw ConfigError(fmt::format("{}: [{}] {} entries must be > 0", r.where(sec + "." + key), sec, key));
        if (i && !(v[i] > v[i - 1]))
            throw ConfigError(fmt::format("{}: [{}] {} must be strictly ascending", r.where(sec + "." + key), sec, key));
    }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& name)
{
    const Reader r(text, name);
    RunConfig c;
    c.source = name;
    if (!r.has_section("cavity")) throw ConfigError(fmt::format("{}: missing required section [cavity]", name));
    c.cavity.gap = r.number("cavity", "gap");
    c.cavity.width = r.number("cavity", "width");
    if (r.has("cavity", "gap_meters")) {
        c.gap_meters = r.number("cavity", "gap_meters");
        if (!(*c.gap_meters > 0.0))
            throw ConfigError(fmt::format("{}: [cavity] gap_meters must be > 0", r.where("cavity.gap_meters")));
    }
    c.cavity.left = read_material(r, "left");
    c.cavity.right = read_material(r, "right");
    try {
        validate(c.cavity);
    } catch (const DomainError& e) {
        throw ConfigError(fmt::format("{}: [cavity] {}", r.where("cavity"), e.what()));
    }
    // lengths are in units of L with gap = gap_meters
    std::optional<double> length_unit;
    if (c.gap_meters) length_unit = *c.gap_meters / c.cavity.gap;

    if (r.has_section("state")) c.state = read_state(r, length_unit);
    if (r.has_section("baths")) {
        c.beta_left = read_beta(r, "baths", "_left", length_unit);
        c.beta_right = read_beta(r, "baths", "_right", length_unit);
    }

    QuadratureSpec& q = c.quad;
    q.rel_tol = r.number_or("quadrature", "rel_tol", q.rel_tol);
    q.abs_tol = r.number_or("quadrature", "abs_tol", q.abs_tol);
    q.panel_width = r.number_or("quadrature", "panel_width", q.panel_width);
    q.tail_threshold = r.number_or("quadrature", "tail_threshold", q.tail_threshold);
    q.max_panels = r.integer_or("quadrature", "max_panels", q.max_panels);
    q.k_min = r.number_or("quadrature", "k_min", q.k_min);
    q.max_terms = r.integer_or("quadrature", "max_terms", q.max_terms);
    q.max_subdivisions = static_cast<int>(r.integer_or("quadrature", "max_subdivisions", q.max_subdivisions));
    q.threads = static_cast<int>(r.integer_or("quadrature", "threads", q.threads));
    q.reg_eta0 = r.number_or("quadrature", "reg_eta0", q.reg_eta0);
    q.reg_levels = static_cast<int>(r.integer_or("quadrature", "reg_levels", q.reg_levels));
    q.panel_floor = r.number_or("quadrature", "panel_floor", q.panel_floor);
    try {
        validate(q);
    } catch (const DomainError& e) {
        throw ConfigError(fmt::format("{}: [quadrature] {}", r.where("quadrature"), e.what()));
    }

    if (r.has("sweep", "sigma") && r.has("sweep", "sigma_geometric"))
        throw ConfigError(fmt::format("{}: [sweep] give sigma or sigma_geometric, not both", r.where("sweep")));
    if (r.has("sweep", "sigma")) {
        c.sigma = r.list("sweep", "sigma");
    } else if (r.has("sweep", "sigma_geometric")) {
        const auto g = r.list("sweep", "sigma_geometric");
        if (g.size() != 3 || !(g[0] > 0.0) || !(g[1] > g[0]) || g[2] < 2 || g[2] != std::floor(g[2]))
            throw ConfigError(fmt::format("{}: [sweep] sigma_geometric must be lo, hi, count with 0 < lo < hi, count >= 2",
                                          r.where("sweep.sigma_geometric")));
        const int n = static_cast<int>(g[2]);
        for (int i = 0; i < n; ++i) c.sigma.push_back(g[0] * std::pow(g[1] / g[0], static_cast<double>(i) / (n - 1)));
    }
    if (!c.sigma.empty()) require_ascending_positive(r, c.sigma, "sweep", "sigma");
    if (r.has("sweep", "omega_center")) {
        c.omega_center = r.list("sweep", "omega_center");
        for (double w : c.omega_center)
            if (!(w > 0.0)) throw ConfigError(fmt::format("{}: [sweep] omega_center entries must be > 0", r.where("sweep.omega_center")));
    }
    c.squeeze_scale = r.number_or("sweep", "scale", 1.0);

    c.gaps = r.has("limits", "gaps") ? r.list("limits", "gaps") : std::vector<double>{c.cavity.gap};
    c.widths = r.has("limits", "widths") ? r.list("limits", "widths") : std::vector<double>{c.cavity.width};
    require_ascending_positive(r, c.gaps, "limits", "gaps");
    require_ascending_positive(r, c.widths, "limits", "widths");
    c.xi = r.number_or("limits", "xi", 0.5);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

const FieldState& require_state(const RunConfig& cfg)
{
    if (!cfg.state) throw ConfigError(fmt::format("{}: missing required section [state]", cfg.source));
    return *cfg.state;
}

double require_beta_left(const RunConfig& cfg)
{
    if (!cfg.beta_left)
        throw ConfigError(fmt::format("{}: missing required key 'beta_left' (or temperature_left) in section [baths]", cfg.source));
    return *cfg.beta_left;
}

double require_beta_right(const RunConfig& cfg)
{
    if (!cfg.beta_right)
        throw ConfigError(
            fmt::format("{}: missing required key 'beta_right' (or temperature_right) in section [baths]", cfg.source));
    return *cfg.beta_right;
}

}  // namespace casimir
