// config.cpp — Parser and validator for experiment configuration files

#include "qfridge/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace qfridge {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        if (i < s.size() && s[i] == ')') --depth;
        if (i == s.size() || (s[i] == sep && depth == 0)) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

class Reader {
public:
    Reader(std::string_view text, std::string_view source) : source_(source)
    {
        std::istringstream in{std::string(text)};
        std::string raw;
        std::string section;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = raw;
            if (const auto pos = line.find_first_of("#;"); pos != std::string::npos) line.erase(pos);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(line_no, "malformed section header '" + line + "'");
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                if (!known_sections().count(section)) fail(line_no, "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(line_no, "expected 'key = value', got '" + line + "'");
            if (section.empty()) fail(line_no, "key outside of any section");
            const std::string key = trim(std::string_view(line).substr(0, eq));
            const std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key.empty()) fail(line_no, "empty key");
            const std::string full = section + "." + key;
            if (key == "link") {
                links_.push_back({value, line_no});
                continue;
            }
            if (entries_.count(full)) fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
            entries_[full] = {value, line_no};
        }
    }

    std::optional<Entry> take(const std::string& key)
    {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        Entry e = it->second;
        entries_.erase(it);
        return e;
    }

    const std::vector<Entry>& links() const { return links_; }

    void reject_leftovers() const
    {
        if (entries_.empty()) return;
        const auto first = std::min_element(entries_.begin(), entries_.end(),
                                            [](const auto& a, const auto& b) { return a.second.line < b.second.line; });
        const std::string& full = first->first;
        const auto dot = full.find('.');
        fail(first->second.line,
             "unknown key '" + full.substr(dot + 1) + "' in [" + full.substr(0, dot) + "]");
    }

    [[noreturn]] void fail(int line, const std::string& message) const
    {
        std::ostringstream os;
        os << source_ << ":" << line << ": " << message;
        throw ConfigError(os.str());
    }

private:
    static const std::set<std::string>& known_sections()
    {
        static const std::set<std::string> s = {"system", "bath", "qme", "evolution", "thermometry", "sweep", "output", "meta"};
        return s;
    }

    std::string source_;
    std::map<std::string, Entry> entries_;
    std::vector<Entry> links_;
};

double parse_number(std::string_view text)
{
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const double num = parse_number(std::string_view(s).substr(0, slash));
        const double den = parse_number(std::string_view(s).substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("division by zero in '" + s + "'");
        return num / den;
    }
    const auto pi_pos = s.find("pi");
    if (pi_pos != std::string::npos) {
        if (pi_pos + 2 != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
        std::string coeff = trim(std::string_view(s).substr(0, pi_pos));
        if (!coeff.empty() && coeff.back() == '*') coeff = trim(std::string_view(coeff).substr(0, coeff.size() - 1));
        const double c = coeff.empty() ? 1.0 : coeff == "-" ? -1.0 : parse_number(coeff);
        return c * std::numbers::pi;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

std::vector<double> parse_values(std::string_view text)
{
    const std::string s = trim(text);
    if (s.rfind("linspace(", 0) == 0) {
        if (s.back() != ')') throw std::invalid_argument("malformed linspace '" + s + "'");
        const auto args = split(std::string_view(s).substr(9, s.size() - 10), ',');
        if (args.size() != 3) throw std::invalid_argument("linspace needs (start, stop, count)");
        const double a = parse_number(args[0]);
        const double b = parse_number(args[1]);
        const double n = parse_number(args[2]);
        if (n < 1 || n != std::floor(n)) throw std::invalid_argument("linspace count must be a positive integer");
        const auto count = static_cast<std::size_t>(n);
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        return out;
    }
    std::vector<double> out;
    for (const std::string& part : split(s, ',')) {
        if (part.rfind("linspace(", 0) == 0) {
            const auto more = parse_values(part);
            out.insert(out.end(), more.begin(), more.end());
        } else {
            out.push_back(parse_number(part));
        }
    }
    return out;
}

template <class F>
auto guarded(Reader& reader, const Entry& e, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        reader.fail(e.line, ex.what());
    }
}

std::vector<Site>& sites_of(ExperimentConfig& c) { return c.system.sites; }

std::size_t site_index(std::string_view name, char prefix)
{
    if (name.size() != 2 || name[0] != prefix || name[1] < '1' || name[1] > '9') return 0;
    return static_cast<std::size_t>(name[1] - '1') + 1;  // 1-based, 0 means "not this form"
}

} // namespace

double parse_spin_value(std::string_view text)
{
    const double j = parse_number(text);
    SpinQuantumNumber::from_value(j);
    return j;
}

std::size_t SweepSpec::point_count() const
{
    std::size_t n = 1;
    for (const SweepAxis& a : axes) n *= a.values.size();
    return n;
}

std::vector<double> SweepSpec::point(std::size_t index) const
{
    std::vector<double> out(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        const std::size_t n = axes[k].values.size();
        out[k] = axes[k].values[index % n];
        index /= n;
    }
    return out;
}

void SweepSpec::validate() const
{
    if (axes.empty() || axes.size() > 2) throw std::invalid_argument("sweep needs one or two axes");
    for (const SweepAxis& a : axes) {
        if (!is_sweep_parameter(a.parameter)) throw std::invalid_argument("unknown sweep parameter '" + a.parameter + "'");
        if (a.values.empty()) throw std::invalid_argument("sweep axis '" + a.parameter + "' has no values");
    }
    for (const SweepLink& l : links) {
        if (!is_sweep_parameter(l.target) || !is_sweep_parameter(l.source)) {
            throw std::invalid_argument("link refers to an unknown parameter");
        }
    }
}

HeatConvention ExperimentConfig::effective_heat_convention() const
{
    if (heat_convention) return *heat_convention;
    return mode == QmeMode::Global ? HeatConvention::Global : HeatConvention::Local;
}

TemperatureSearch ExperimentConfig::effective_search() const
{
    TemperatureSearch s = search;
    s.t_max = search_factor * baths.max_temperature();
    return s;
}

void ExperimentConfig::validate() const
{
    system.validate();
    baths.validate(system.sites.size());
    evolution.validate();
    if (mode == QmeMode::Global && !std::holds_alternative<OhmicCoupling>(baths.coupling)) {
        throw std::invalid_argument("global QME requires an Ohmic bath (bath.coupling = ohmic)");
    }
    if (mode == QmeMode::Local && !std::holds_alternative<FlatCoupling>(baths.coupling)) {
        throw std::invalid_argument("local QME requires a flat bath rate (bath.coupling = flat)");
    }
    if (measures.empty()) throw std::invalid_argument("at least one distance measure is required");
    if (!(search_factor > 1.0)) throw std::invalid_argument("thermometry.t_max_factor must exceed 1");
    if (sweep) sweep->validate();
}

bool is_sweep_parameter(std::string_view name)
{
    static const std::set<std::string, std::less<>> fixed = {"j", "J", "gamma", "delta", "Jdelta", "phi", "Gamma", "alpha"};
    if (fixed.count(name)) return true;
    return site_index(name, 'j') || site_index(name, 'h') || site_index(name, 'T');
}

void apply_parameter(ExperimentConfig& c, std::string_view name, double value)
{
    auto& sites = sites_of(c);
    auto require_site = [&](std::size_t one_based) -> Site& {
        if (one_based > sites.size()) {
            throw std::invalid_argument("parameter '" + std::string(name) + "' refers to a missing site");
        }
        return sites[one_based - 1];
    };
    if (name == "j") {
        for (Site& s : sites) s.spin = SpinQuantumNumber::from_value(value);
    } else if (const auto r = site_index(name, 'j')) {
        require_site(r).spin = SpinQuantumNumber::from_value(value);
    } else if (const auto r = site_index(name, 'h')) {
        require_site(r).field = value;
    } else if (const auto r = site_index(name, 'T')) {
        if (r > c.baths.temperatures.size()) throw std::invalid_argument("temperature for a missing site");
        c.baths.temperatures[r - 1] = value;
    } else if (name == "J") {
        std::visit([&](auto& i) { i.coupling = value; }, c.system.interaction);
    } else if (name == "gamma" || name == "delta") {
        auto* xyz = std::get_if<XyzInteraction>(&c.system.interaction);
        if (!xyz) throw std::invalid_argument("'" + std::string(name) + "' only applies to the XYZ interaction");
        (name == "gamma" ? xyz->gamma : xyz->delta) = value;
        if (name == "delta") c.zz_coupling.reset();
    } else if (name == "Jdelta") {
        if (!std::holds_alternative<XyzInteraction>(c.system.interaction)) {
            throw std::invalid_argument("'Jdelta' only applies to the XYZ interaction");
        }
        c.zz_coupling = value;
    } else if (name == "phi") {
        auto* bb = std::get_if<BilinearBiquadraticInteraction>(&c.system.interaction);
        if (!bb) throw std::invalid_argument("'phi' only applies to the bilinear-biquadratic interaction");
        bb->phi = value;
    } else if (name == "Gamma") {
        auto* flat = std::get_if<FlatCoupling>(&c.baths.coupling);
        if (!flat) throw std::invalid_argument("'Gamma' only applies to a flat bath coupling");
        flat->rate = value;
    } else if (name == "alpha") {
        auto* ohmic = std::get_if<OhmicCoupling>(&c.baths.coupling);
        if (!ohmic) throw std::invalid_argument("'alpha' only applies to an Ohmic bath coupling");
        std::fill(ohmic->alpha.begin(), ohmic->alpha.end(), value);
    } else {
        throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
    }
    if (c.zz_coupling) {
        auto& xyz = std::get<XyzInteraction>(c.system.interaction);
        if (xyz.coupling == 0.0) throw std::invalid_argument("Jdelta needs a nonzero J");
        xyz.delta = *c.zz_coupling / xyz.coupling;
    }
}

double read_parameter(const ExperimentConfig& c, std::string_view name)
{
    const auto& sites = c.system.sites;
    if (name == "j") return sites.at(0).spin.value();
    if (const auto r = site_index(name, 'j')) return sites.at(r - 1).spin.value();
    if (const auto r = site_index(name, 'h')) return sites.at(r - 1).field;
    if (const auto r = site_index(name, 'T')) return c.baths.temperatures.at(r - 1);
    if (name == "J") return c.system.coupling();
    if (const auto* xyz = std::get_if<XyzInteraction>(&c.system.interaction)) {
        if (name == "gamma") return xyz->gamma;
        if (name == "delta") return xyz->delta;
        if (name == "Jdelta") return xyz->coupling * xyz->delta;
    }
    if (const auto* bb = std::get_if<BilinearBiquadraticInteraction>(&c.system.interaction)) {
        if (name == "phi") return bb->phi;
    }
    if (const auto* flat = std::get_if<FlatCoupling>(&c.baths.coupling)) {
        if (name == "Gamma") return flat->rate;
    }
    if (const auto* ohmic = std::get_if<OhmicCoupling>(&c.baths.coupling)) {
        if (name == "alpha") return ohmic->alpha.at(0);
    }
    throw std::invalid_argument("parameter '" + std::string(name) + "' is not defined for this configuration");
}

ExperimentConfig derive_point(const ExperimentConfig& config, std::size_t index)
{
    ExperimentConfig out = config;
    out.sweep.reset();
    if (!config.sweep) return out;
    const SweepSpec& sweep = *config.sweep;
    if (index >= sweep.point_count()) throw std::out_of_range("derive_point: grid index out of range");
    const std::vector<double> values = sweep.point(index);
    for (std::size_t k = 0; k < values.size(); ++k) apply_parameter(out, sweep.axes[k].parameter, values[k]);
    for (const SweepLink& l : sweep.links) apply_parameter(out, l.target, read_parameter(out, l.source) + l.offset);
    return out;
}

ExperimentConfig parse_config(std::string_view text, std::string_view source_name)
{
    Reader reader(text, source_name);
    ExperimentConfig c;
    c.source_text = std::string(text);

    auto required = [&](const std::string& key) {
        auto e = reader.take(key);
        if (!e) {
            std::ostringstream os;
            os << source_name << ": missing required key '" << key << "'";
            throw ConfigError(os.str());
        }
        return *e;
    };
    auto number = [&](const Entry& e) { return guarded(reader, e, [&] { return parse_number(e.value); }); };
    auto numbers = [&](const Entry& e) { return guarded(reader, e, [&] { return parse_values(e.value); }); };

    if (auto e = reader.take("meta.name")) c.name = e->value;

    // [system]
    const Entry spins_e = required("system.spins");
    std::vector<double> spins = guarded(reader, spins_e, [&] {
        std::vector<double> out;
        for (const std::string& s : split(spins_e.value, ',')) out.push_back(parse_spin_value(s));
        return out;
    });
    const Entry fields_e = required("system.fields");
    const std::vector<double> fields = numbers(fields_e);
    if (fields.size() != spins.size()) reader.fail(fields_e.line, "need one field per spin");
    for (std::size_t r = 0; r < spins.size(); ++r) {
        c.system.sites.push_back({SpinQuantumNumber::from_value(spins[r]), fields[r]});
    }

    const Entry inter_e = required("system.interaction");
    const double coupling = [&] {
        auto e = reader.take("system.J");
        return e ? number(*e) : 0.0;
    }();
    auto gamma_e = reader.take("system.gamma");
    auto delta_e = reader.take("system.delta");
    auto jdelta_e = reader.take("system.Jdelta");
    auto phi_e = reader.take("system.phi");
    const std::string& kind = inter_e.value;
    if (kind == "xyz" || kind == "xx" || kind == "xxz") {
        XyzInteraction xyz{coupling, gamma_e ? number(*gamma_e) : 0.0, delta_e ? number(*delta_e) : 0.0};
        if (kind == "xx" && (xyz.gamma != 0.0 || xyz.delta != 0.0 || jdelta_e)) {
            reader.fail(inter_e.line, "interaction 'xx' cannot take gamma or delta; use 'xyz'");
        }
        if (kind == "xxz" && xyz.gamma != 0.0) reader.fail(gamma_e->line, "interaction 'xxz' has gamma = 0");
        if (delta_e && jdelta_e) reader.fail(jdelta_e->line, "give either delta or Jdelta, not both");
        c.system.interaction = xyz;
        if (phi_e) reader.fail(phi_e->line, "'phi' only applies to interaction = bb");
        if (jdelta_e) c.zz_coupling = number(*jdelta_e);
    } else if (kind == "bb") {
        c.system.interaction = BilinearBiquadraticInteraction{coupling, phi_e ? number(*phi_e) : 0.0};
        for (const auto* e : {&gamma_e, &delta_e, &jdelta_e}) {
            if (*e) reader.fail((*e)->line, "anisotropy keys only apply to XYZ interactions");
        }
    } else if (kind == "mixed_xx") {
        c.system.interaction = MixedXxInteraction{coupling};
        for (const auto* e : {&gamma_e, &delta_e, &jdelta_e, &phi_e}) {
            if (*e) reader.fail((*e)->line, "mixed_xx takes only J");
        }
    } else {
        reader.fail(inter_e.line, "unknown interaction '" + kind + "' (expected xx, xxz, xyz, bb or mixed_xx)");
    }
    if (auto e = reader.take("system.boundary")) {
        if (e->value == "periodic") c.system.boundary = Boundary::Periodic;
        else if (e->value == "open") c.system.boundary = Boundary::Open;
        else reader.fail(e->line, "boundary must be 'periodic' or 'open'");
    }

    // [bath]
    const Entry temps_e = required("bath.temperatures");
    c.baths.temperatures = numbers(temps_e);
    const std::string coupling_kind = [&] {
        auto e = reader.take("bath.coupling");
        return e ? e->value : std::string("flat");
    }();
    auto gamma_rate_e = reader.take("bath.Gamma");
    auto alpha_e = reader.take("bath.alpha");
    auto cutoff_e = reader.take("bath.cutoff");
    if (coupling_kind == "flat") {
        if (alpha_e || cutoff_e) reader.fail((alpha_e ? alpha_e : cutoff_e)->line, "alpha/cutoff need coupling = ohmic");
        c.baths.coupling = FlatCoupling{gamma_rate_e ? number(*gamma_rate_e) : 0.05};
    } else if (coupling_kind == "ohmic") {
        if (gamma_rate_e) reader.fail(gamma_rate_e->line, "Gamma needs coupling = flat");
        OhmicCoupling ohmic;
        ohmic.alpha = alpha_e ? numbers(*alpha_e) : std::vector<double>{1e-3};
        if (ohmic.alpha.size() == 1) ohmic.alpha.assign(c.system.sites.size(), ohmic.alpha[0]);
        ohmic.cutoff = cutoff_e ? number(*cutoff_e) : 1e3;
        c.baths.coupling = ohmic;
    } else {
        reader.fail(temps_e.line, "bath.coupling must be 'flat' or 'ohmic'");
    }

    // [qme]
    if (auto e = reader.take("qme.mode")) {
        if (e->value == "local") c.mode = QmeMode::Local;
        else if (e->value == "global") c.mode = QmeMode::Global;
        else reader.fail(e->line, "qme.mode must be 'local' or 'global'");
    }
    if (auto e = reader.take("qme.heat_convention")) {
        if (e->value == "local") c.heat_convention = HeatConvention::Local;
        else if (e->value == "global") c.heat_convention = HeatConvention::Global;
        else reader.fail(e->line, "qme.heat_convention must be 'local' or 'global'");
    }
    if (auto e = reader.take("qme.steady_state")) {
        if (e->value == "integrate") c.method = SteadyStateMethod::Integrate;
        else if (e->value == "nullspace") c.method = SteadyStateMethod::Nullspace;
        else reader.fail(e->line, "qme.steady_state must be 'integrate' or 'nullspace'");
    }

    // [evolution]
    if (auto e = reader.take("evolution.dt")) c.evolution.dt = number(*e);
    if (auto e = reader.take("evolution.t_max")) c.evolution.t_max = number(*e);
    if (auto e = reader.take("evolution.convergence_tol")) c.evolution.convergence_tol = number(*e);
    if (auto e = reader.take("evolution.record_stride")) c.evolution.record_stride = static_cast<int>(number(*e));
    if (auto e = reader.take("evolution.sustain_samples")) c.evolution.sustain_samples = static_cast<int>(number(*e));
    if (auto e = reader.take("evolution.backend")) {
        if (e->value == "sector") c.evolution.backend = IntegrationBackend::Sector;
        else if (e->value == "dense") c.evolution.backend = IntegrationBackend::Dense;
        else reader.fail(e->line, "evolution.backend must be 'sector' or 'dense'");
    }

    // [thermometry]
    if (auto e = reader.take("thermometry.measures")) {
        c.measures.clear();
        for (const std::string& m : split(e->value, ',')) {
            guarded(reader, *e, [&] { c.measures.push_back(parse_distance_measure(m)); return 0; });
        }
    }
    if (auto e = reader.take("thermometry.t_min")) c.search.t_min = number(*e);
    if (auto e = reader.take("thermometry.t_max_factor")) c.search_factor = number(*e);
    if (auto e = reader.take("thermometry.scan_points")) c.search.scan_points = static_cast<int>(number(*e));
    if (auto e = reader.take("thermometry.tolerance")) c.search.tolerance = number(*e);

    // [sweep]
    SweepSpec sweep;
    for (const char* key : {"sweep.axis1", "sweep.axis2"}) {
        auto e = reader.take(key);
        if (!e) continue;
        const auto colon = e->value.find(':');
        if (colon == std::string::npos) reader.fail(e->line, "axis must read 'parameter: values'");
        SweepAxis axis;
        axis.parameter = trim(std::string_view(e->value).substr(0, colon));
        if (!is_sweep_parameter(axis.parameter)) reader.fail(e->line, "unknown sweep parameter '" + axis.parameter + "'");
        axis.values = guarded(reader, *e, [&] { return parse_values(std::string_view(e->value).substr(colon + 1)); });
        if (axis.values.empty()) reader.fail(e->line, "axis has no values");
        sweep.axes.push_back(std::move(axis));
    }
    for (const Entry& e : reader.links()) {
        // target = source + offset
        const auto eq = e.value.find('=');
        if (eq == std::string::npos) reader.fail(e.line, "link must read 'target = source + offset'");
        SweepLink link;
        link.target = trim(std::string_view(e.value).substr(0, eq));
        const std::string rhs = trim(std::string_view(e.value).substr(eq + 1));
        const auto op = rhs.find_first_of("+-", 1);
        link.source = trim(std::string_view(rhs).substr(0, op));
        if (op != std::string::npos) {
            const double magnitude = guarded(reader, e, [&] { return parse_number(std::string_view(rhs).substr(op + 1)); });
            link.offset = rhs[op] == '-' ? -magnitude : magnitude;
        }
        if (!is_sweep_parameter(link.target) || !is_sweep_parameter(link.source)) {
            reader.fail(e.line, "link refers to an unknown parameter");
        }
        sweep.links.push_back(std::move(link));
    }
    if (!sweep.axes.empty()) c.sweep = std::move(sweep);
    else if (!sweep.links.empty()) reader.fail(reader.links().front().line, "links need at least one sweep axis");

    // [output]
    if (auto e = reader.take("output.path")) c.output_path = e->value;

    reader.reject_leftovers();

    if (c.zz_coupling) {
        auto& xyz = std::get<XyzInteraction>(c.system.interaction);
        if (xyz.coupling != 0.0) xyz.delta = *c.zz_coupling / xyz.coupling;
    }

    try {
        c.validate();
        // Every grid point must also be a valid configuration.
        if (c.sweep) {
            for (std::size_t i = 0; i < c.sweep->point_count(); ++i) derive_point(c, i).validate();
        }
    } catch (const std::exception& ex) {
        std::ostringstream os;
        os << source_name << ": " << ex.what();
        throw ConfigError(os.str());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open configuration file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

} // namespace qfridge
