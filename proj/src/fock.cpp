#include "bellforge/fock.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace bellforge {

OccupationVector::OccupationVector(std::vector<int> c) : counts(std::move(c)) {
    for (int v : counts)
        if (v < 0) throw std::invalid_argument("occupation counts must be non-negative");
}

OccupationVector OccupationVector::parse(const std::string& digits) {
    std::vector<int> c;
    for (char ch : digits) {
        if (ch == ' ' || ch == '\t') continue;
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("occupation string must be digits, got '" + digits + "'");
        c.push_back(ch - '0');
    }
    if (c.empty()) throw std::invalid_argument("empty occupation string");
    return OccupationVector(std::move(c));
}

int OccupationVector::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

std::string OccupationVector::to_digits() const {
    std::string s;
    for (int v : counts) {
        if (v > 9) throw std::logic_error("occupation count > 9 has no digit form");
        s.push_back(static_cast<char>('0' + v));
    }
    return s;
}

namespace {

void enumerate_rec(int remaining, int mode, int modes, std::vector<int>& cur,
                   std::vector<OccupationVector>& out) {
    if (mode == modes - 1) {
        cur[static_cast<std::size_t>(mode)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur[static_cast<std::size_t>(mode)] = k;
        enumerate_rec(remaining - k, mode + 1, modes, cur, out);
    }
}

}  // namespace

std::vector<OccupationVector> enumerate_basis(int photons, int modes) {
    if (photons < 0 || modes < 1) throw std::invalid_argument("enumerate_basis: bad arguments");
    std::vector<OccupationVector> out;
    std::vector<int> cur(static_cast<std::size_t>(modes), 0);
    enumerate_rec(photons, 0, modes, cur, out);
    return out;
}

FockBasis::FockBasis(int photons, int modes)
    : photons_(photons), modes_(modes), states_(enumerate_basis(photons, modes)) {
    for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = static_cast<int>(i);
}

int FockBasis::index_of(const OccupationVector& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

std::shared_ptr<const FockBasis> shared_basis(int photons, int modes) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const FockBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& entry = cache[{photons, modes}];
    if (!entry) entry = std::make_shared<FockBasis>(photons, modes);
    return entry;
}

FockState::FockState() : FockState(shared_basis(0, 1), std::vector<cplx>(1)) {}

FockState::FockState(std::shared_ptr<const FockBasis> basis, std::vector<cplx> amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (amps_.size() != basis_->size())
        throw std::invalid_argument("FockState: amplitude count does not match basis size");
}

FockState FockState::zero(int photons, int modes) {
    auto basis = shared_basis(photons, modes);
    return FockState(basis, std::vector<cplx>(basis->size()));
}

FockState FockState::basis_state(const OccupationVector& occ) {
    auto basis = shared_basis(occ.total(), occ.n_modes());
    std::vector<cplx> amps(basis->size());
    amps[static_cast<std::size_t>(basis->index_of(occ))] = 1.0;
    return FockState(basis, std::move(amps));
}

FockState FockState::from_components(
    int modes, const std::vector<std::pair<OccupationVector, cplx>>& components) {
    if (components.empty()) throw std::invalid_argument("from_components: no components");
    const int photons = components.front().first.total();
    auto basis = shared_basis(photons, modes);
    std::vector<cplx> amps(basis->size());
    for (const auto& [occ, amp] : components) {
        const int idx = basis->index_of(occ);
        if (idx < 0)
            throw std::invalid_argument("from_components: component outside basis: " +
                                        occ.to_digits());
        amps[static_cast<std::size_t>(idx)] += amp;
    }
    return FockState(basis, std::move(amps));
}

cplx FockState::amplitude(const OccupationVector& occ) const {
    const int idx = basis_->index_of(occ);
    if (idx < 0) throw std::invalid_argument("amplitude: vector not in basis");
    return amps_[static_cast<std::size_t>(idx)];
}

double FockState::norm_sq() const {
    double s = 0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
}

double FockState::norm() const { return std::sqrt(norm_sq()); }

FockState FockState::normalized() const {
    const double n = norm();
    if (n == 0) throw std::domain_error("cannot normalize the zero state");
    return scaled(1.0 / n);
}

FockState FockState::scaled(cplx factor) const {
    std::vector<cplx> amps(amps_);
    for (cplx& a : amps) a *= factor;
    return FockState(basis_, std::move(amps));
}

FockState FockState::operator+(const FockState& rhs) const {
    if (basis_->photons() != rhs.photons() || basis_->modes() != rhs.modes())
        throw std::invalid_argument("state sum: basis mismatch");
    std::vector<cplx> amps(amps_);
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += rhs.amps_[i];
    return FockState(basis_, std::move(amps));
}

cplx inner_product(const FockState& a, const FockState& b) {
    if (a.photons() != b.photons() || a.modes() != b.modes())
        throw std::invalid_argument("inner_product: basis mismatch");
    cplx s = 0;
    auto av = a.amplitudes();
    auto bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) s += std::conj(av[i]) * bv[i];
    return s;
}

FockState tensor(const FockState& a, const FockState& b) {
    const int modes = a.modes() + b.modes();
    const int photons = a.photons() + b.photons();
    auto basis = shared_basis(photons, modes);
    std::vector<cplx> amps(basis->size());
    const auto& ab = a.basis();
    const auto& bb = b.basis();
    for (std::size_t i = 0; i < ab.size(); ++i) {
        const cplx ai = a.amplitudes()[i];
        if (ai == cplx{}) continue;
        for (std::size_t j = 0; j < bb.size(); ++j) {
            const cplx bj = b.amplitudes()[j];
            if (bj == cplx{}) continue;
            std::vector<int> joined = ab.at(i).counts;
            joined.insert(joined.end(), bb.at(j).counts.begin(), bb.at(j).counts.end());
            const int idx = basis->index_of(OccupationVector(std::move(joined)));
            amps[static_cast<std::size_t>(idx)] += ai * bj;
        }
    }
    return FockState(basis, std::move(amps));
}

Projection partial_project(const FockState& state, std::span<const int> aux_modes,
                           const OccupationVector& pattern) {
    const int n = state.modes();
    if (pattern.n_modes() != static_cast<int>(aux_modes.size()))
        throw std::invalid_argument("partial_project: pattern length != aux mode count");
    std::vector<bool> is_aux(static_cast<std::size_t>(n), false);
    for (int m : aux_modes) {
        if (m < 0 || m >= n) throw std::invalid_argument("partial_project: aux mode out of range");
        if (is_aux[static_cast<std::size_t>(m)])
            throw std::invalid_argument("partial_project: repeated aux mode");
        is_aux[static_cast<std::size_t>(m)] = true;
    }

    const int remaining_photons = state.photons() - pattern.total();
    const int remaining_modes = n - static_cast<int>(aux_modes.size());
    if (remaining_modes < 1)
        throw std::invalid_argument("partial_project: no modes left after projection");

    Projection out{FockState::zero(std::max(remaining_photons, 0), remaining_modes),
                   FockState::zero(std::max(remaining_photons, 0), remaining_modes), 0.0, false};
    if (remaining_photons < 0) {  // pattern asks for more photons than the state carries
        out.empty = true;
        return out;
    }

    auto cond_basis = shared_basis(remaining_photons, remaining_modes);
    std::vector<cplx> chi(cond_basis->size());
    const auto& basis = state.basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const cplx amp = state.amplitudes()[k];
        if (amp == cplx{}) continue;
        const auto& occ = basis.at(k);
        bool match = true;
        for (std::size_t a = 0; a < aux_modes.size(); ++a) {
            if (occ[aux_modes[a]] != pattern[static_cast<int>(a)]) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        std::vector<int> rest;
        rest.reserve(static_cast<std::size_t>(remaining_modes));
        for (int m = 0; m < n; ++m)
            if (!is_aux[static_cast<std::size_t>(m)]) rest.push_back(occ[m]);
        chi[static_cast<std::size_t>(cond_basis->index_of(OccupationVector(std::move(rest))))] +=
            amp;
    }

    out.unnormalized = FockState(cond_basis, std::move(chi));
    out.probability = out.unnormalized.norm_sq();
    if (out.probability > 0) {
        out.normalized = out.unnormalized.scaled(1.0 / std::sqrt(out.probability));
    } else {
        out.empty = true;
        out.normalized = out.unnormalized;
    }
    return out;
}

BellKind bell_kind_from_name(const std::string& name) {
    if (name == "phi+") return BellKind::PhiPlus;
    if (name == "phi-") return BellKind::PhiMinus;
    if (name == "psi+") return BellKind::PsiPlus;
    if (name == "psi-") return BellKind::PsiMinus;
    throw std::invalid_argument("unknown Bell state name: " + name);
}

std::string bell_kind_name(BellKind kind) {
    switch (kind) {
        case BellKind::PhiPlus: return "phi+";
        case BellKind::PhiMinus: return "phi-";
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PsiMinus: return "psi-";
    }
    throw std::logic_error("bad BellKind");
}

FockState bell_target(BellKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellKind::PhiPlus:
            return FockState::from_components(
                4, {{OccupationVector::parse("1010"), r}, {OccupationVector::parse("0101"), r}});
        case BellKind::PhiMinus:
            return FockState::from_components(
                4, {{OccupationVector::parse("1010"), r}, {OccupationVector::parse("0101"), -r}});
        case BellKind::PsiPlus:
            return FockState::from_components(
                4, {{OccupationVector::parse("0110"), r}, {OccupationVector::parse("1001"), r}});
        case BellKind::PsiMinus:
            return FockState::from_components(
                4, {{OccupationVector::parse("0110"), r}, {OccupationVector::parse("1001"), -r}});
    }
    throw std::logic_error("bad BellKind");
}

}  // namespace bellforge
