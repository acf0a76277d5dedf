// models.cpp — Hamiltonian construction on the full tensor-product space

#include "qfridge/models.hpp"

#include <cmath>
#include <string>

namespace qfridge {

namespace {

struct SiteOperators {
    std::vector<SpinOperators> embedded;
};

SiteOperators embed_all(const SystemSpec& spec)
{
    const std::vector<int> dims = spec.dims();
    SiteOperators out;
    out.embedded.reserve(spec.sites.size());
    for (std::size_t r = 0; r < spec.sites.size(); ++r) {
        const SpinOperators local = spin_operators(spec.sites[r].spin);
        out.embedded.push_back({embed_at_site(local.sx, r, dims), embed_at_site(local.sy, r, dims),
                                embed_at_site(local.sz, r, dims), embed_at_site(local.splus, r, dims),
                                embed_at_site(local.sminus, r, dims)});
    }
    return out;
}

Operator zero_operator(const SystemSpec& spec)
{
    const int d = total_dim(spec.dims());
    return Operator::Zero(d, d);
}

} // namespace

void SystemSpec::validate() const
{
    if (sites.size() < 2) {
        throw std::invalid_argument("system needs at least two sites, got " + std::to_string(sites.size()));
    }
    if (std::holds_alternative<BilinearBiquadraticInteraction>(interaction)) {
        for (std::size_t r = 0; r < sites.size(); ++r) {
            if (sites[r].spin.twice_j() < 2) {
                throw std::invalid_argument("bilinear-biquadratic interaction requires j >= 1 on every site (site " +
                                            std::to_string(r + 1) + " is spin-1/2)");
            }
        }
    }
    if (std::holds_alternative<MixedXxInteraction>(interaction)) {
        if (sites.size() != 2) {
            throw std::invalid_argument("mixed XX interaction is defined for exactly two sites");
        }
        if (sites[0].spin.twice_j() != 1) {
            throw std::invalid_argument("mixed XX interaction requires site 1 to be spin-1/2");
        }
    }
}

std::vector<int> SystemSpec::dims() const
{
    std::vector<int> d;
    d.reserve(sites.size());
    for (const Site& s : sites) d.push_back(s.spin.dim());
    return d;
}

std::vector<std::pair<std::size_t, std::size_t>> SystemSpec::bonds() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = sites.size();
    for (std::size_t r = 0; r + 1 < n; ++r) out.emplace_back(r, r + 1);
    if (boundary == Boundary::Periodic && n >= 3) out.emplace_back(n - 1, 0);
    return out;
}

double SystemSpec::coupling() const
{
    return std::visit([](const auto& i) { return i.coupling; }, interaction);
}

std::pair<Operator, std::vector<Operator>> build_h_loc(const SystemSpec& spec)
{
    const std::vector<int> dims = spec.dims();
    Operator total = zero_operator(spec);
    std::vector<Operator> terms;
    terms.reserve(spec.sites.size());
    for (std::size_t r = 0; r < spec.sites.size(); ++r) {
        const Operator sz = spin_operators(spec.sites[r].spin).sz;
        terms.push_back(spec.sites[r].field * embed_at_site(sz, r, dims));
        total += terms.back();
    }
    return {std::move(total), std::move(terms)};
}

Operator build_h_xyz(const SystemSpec& spec)
{
    const auto* xyz = std::get_if<XyzInteraction>(&spec.interaction);
    if (!xyz) throw std::invalid_argument("build_h_xyz: interaction is not XYZ");
    const SiteOperators ops = embed_all(spec);
    Operator h = zero_operator(spec);
    for (const auto& [a, b] : spec.bonds()) {
        const SpinOperators& s = ops.embedded[a];
        const SpinOperators& t = ops.embedded[b];
        h += xyz->coupling * ((1.0 + xyz->gamma) * s.sx * t.sx + (1.0 - xyz->gamma) * s.sy * t.sy);
        h += xyz->coupling * xyz->delta * s.sz * t.sz;
    }
    return h;
}

Operator build_h_bb(const SystemSpec& spec)
{
    const auto* bb = std::get_if<BilinearBiquadraticInteraction>(&spec.interaction);
    if (!bb) throw std::invalid_argument("build_h_bb: interaction is not bilinear-biquadratic");
    for (const Site& s : spec.sites) {
        if (s.spin.twice_j() < 2) throw std::invalid_argument("build_h_bb: spin-1/2 sites are not allowed");
    }
    const SiteOperators ops = embed_all(spec);
    Operator h = zero_operator(spec);
    for (const auto& [a, b] : spec.bonds()) {
        const SpinOperators& s = ops.embedded[a];
        const SpinOperators& t = ops.embedded[b];
        const Operator dot = s.sx * t.sx + s.sy * t.sy + s.sz * t.sz;
        h += bb->coupling * std::cos(bb->phi) * dot + bb->coupling * std::sin(bb->phi) * (dot * dot);
    }
    return h;
}

Operator build_h_mixed_xx(const SystemSpec& spec)
{
    const auto* mixed = std::get_if<MixedXxInteraction>(&spec.interaction);
    if (!mixed) throw std::invalid_argument("build_h_mixed_xx: interaction is not mixed XX");
    if (spec.sites.size() != 2 || spec.sites[0].spin.twice_j() != 1) {
        throw std::invalid_argument("build_h_mixed_xx: needs a spin-1/2 on site 1 and exactly two sites");
    }
    const SiteOperators ops = embed_all(spec);
    const SpinOperators& s = ops.embedded[0];
    const SpinOperators& t = ops.embedded[1];
    return mixed->coupling * (s.sx * t.sx + s.sy * t.sy);
}

Hamiltonian build_hamiltonian(const SystemSpec& spec)
{
    spec.validate();
    Hamiltonian h;
    auto [local, terms] = build_h_loc(spec);
    h.local = std::move(local);
    h.local_terms = std::move(terms);
    h.interaction = std::visit(
        [&](const auto& i) -> Operator {
            using T = std::decay_t<decltype(i)>;
            if constexpr (std::is_same_v<T, XyzInteraction>) return build_h_xyz(spec);
            else if constexpr (std::is_same_v<T, BilinearBiquadraticInteraction>) return build_h_bb(spec);
            else return build_h_mixed_xx(spec);
        },
        spec.interaction);
    h.system = h.local + h.interaction;
    return h;
}

TotalSpin total_spin(const SystemSpec& spec)
{
    const SiteOperators ops = embed_all(spec);
    TotalSpin t{zero_operator(spec), zero_operator(spec), zero_operator(spec)};
    for (const SpinOperators& s : ops.embedded) {
        t.sx += s.sx;
        t.sy += s.sy;
        t.sz += s.sz;
    }
    return t;
}

} // namespace qfridge
