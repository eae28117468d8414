#include "reference_states.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace bellforge::reference {

namespace {

using cplx = bellforge::cplx;

FockState lc(int modes, const std::vector<std::pair<std::string, cplx>>& terms) {
    std::vector<std::pair<OccupationVector, cplx>> comps;
    comps.reserve(terms.size());
    for (const auto& [occ, amp] : terms) comps.emplace_back(OccupationVector::parse(occ), amp);
    return FockState::from_components(modes, comps);
}

FockState with_aux(const FockState& logical, const std::string& aux) {
    return tensor(logical, FockState::basis_state(OccupationVector::parse(aux)));
}

const double s2 = std::sqrt(2.0);
const double s3 = std::sqrt(3.0);

FockState chi00() {
    return lc(4, {{"1102", s3 / 4}, {"1120", -s3 / 4}, {"1003", -s3 / 4}, {"0130", -s3 / 4},
                  {"1021", 0.25}, {"0112", 0.25}, {"0031", 0.25}, {"0013", -0.25}});
}
FockState chi01() {
    return lc(4, {{"1101", s3 / (2 * s2)}, {"0111", 1 / (2 * s2)},
                  {"1020", -0.5}, {"0030", -0.5}});
}
FockState chi10() {
    return lc(4, {{"1110", s3 / (2 * s2)}, {"1011", -1 / (2 * s2)},
                  {"0102", 0.5}, {"0003", -0.5}});
}
FockState chi02() {
    return lc(4, {{"1100", s3 / 4}, {"0011", s3 / 4}, {"0110", 0.25}, {"1001", 0.75}});
}
FockState chi20() {
    return lc(4, {{"1001", 0.25}, {"0110", 0.75}, {"1100", -s3 / 4}, {"0011", -s3 / 4}});
}
FockState chi12() { return lc(4, {{"0100", 0.5}, {"0001", s3 / 2}}); }
FockState chi21() { return lc(4, {{"1000", -0.5}, {"0010", s3 / 2}}); }
FockState chi03() { return lc(4, {{"0010", 0.5}, {"1000", s3 / 2}}); }
FockState chi30() { return lc(4, {{"0001", 0.5}, {"0100", -s3 / 2}}); }

FockState chi5_0() {
    const double r = std::sqrt(31.0);
    return lc(4, {{"3100", s2 / r}, {"0130", -s2 / r}, {"3001", 2 * s2 / r},
                  {"0031", -2 * s2 / r}, {"0301", 1 / r}, {"0400", -1 / r},
                  {"1210", -s3 / r}, {"1111", std::sqrt(6.0) / r}});
}
FockState chi5_1() {
    const double r7 = std::sqrt(7.0);
    const double r14 = std::sqrt(14.0);
    return lc(4, {{"3000", 1 / r7}, {"0030", -1 / r7}, {"0300", 1 / r14},
                  {"0201", -s3 / r14}, {"1011", -std::sqrt(3.0 / 7.0)}});
}
FockState chi5_3() { return lc(4, {{"0100", 1 / s2}, {"0001", 1 / s2}}); }

FockState chi_p0() {
    const double a = 0.5 * std::sqrt(3.0 / 5.0);
    return lc(4, {{"1110", a}, {"0111", a}, {"0210", a},
                  {"0021", 1 / std::sqrt(10.0)}, {"1020", -1 / std::sqrt(10.0)},
                  {"1011", std::sqrt(3.0 / 10.0)}, {"0030", -1 / (2 * std::sqrt(5.0))}});
}
FockState chi_p1() {
    const double a = 0.5 * std::sqrt(3.0 / 5.0);
    return lc(4, {{"0101", a}, {"1100", a}, {"0200", a}, {"0020", a},
                  {"1010", 1 / (2 * std::sqrt(5.0))}, {"0011", -1 / (2 * std::sqrt(5.0))},
                  {"1001", std::sqrt(3.0 / 10.0)}});
}
FockState chi_p2() { return lc(4, {{"0001", 1 / s2}, {"1000", -1 / s2}}); }

// Stage-2 claimed residual components (alpha = pi/3).
FockState chi511_0() {
    const cplx i{0, 1};
    const cplx ep = std::polar(1.0, std::numbers::pi / 3.0);
    const cplx em = std::conj(ep);
    return lc(4, {{"2100", 0.25}, {"0120", 0.25}, {"0300", -0.25 * i}, {"0003", -0.25 * i},
                  {"2001", -0.25 * ep}, {"1002", 0.25 * ep}, {"0201", -0.25 * ep},
                  {"0021", 0.25 * ep}, {"0012", -0.25 * ep},
                  {"1020", 0.25 * em}, {"2010", -0.25 * em}, {"1200", -0.25 * em},
                  {"0210", 0.25 * em}, {"0102", 0.25 * em},
                  {"3000", -0.25 * i * em}, {"0030", 0.25 * i * em}});
}
FockState chi511_2() {
    const cplx ep = std::polar(1.0, std::numbers::pi / 3.0);
    const cplx em = std::conj(ep);
    return lc(4, {{"0100", 0.5 * ep}, {"1000", 0.5 * ep}, {"0010", -0.5 * ep},
                  {"0001", 0.5 * em}});
}

}  // namespace

FockState six_mode_residual() {
    FockState r = with_aux(chi00(), "00").scaled(2 * s2 / 5);
    r = r + with_aux(chi10(), "10").scaled(2.0 / 5);
    r = r + with_aux(chi01(), "01").scaled(2.0 / 5);
    r = r + with_aux(chi20(), "20").scaled(s2 / 5);
    r = r + with_aux(chi02(), "02").scaled(s2 / 5);
    r = r + with_aux(chi12(), "12").scaled(1.0 / 5);
    r = r + with_aux(chi21(), "21").scaled(1.0 / 5);
    r = r + with_aux(chi30(), "30").scaled(1.0 / 5);
    r = r + with_aux(chi03(), "03").scaled(1.0 / 5);
    r = r + with_aux(FockState::basis_state(OccupationVector::parse("0000")), "13")
                .scaled(1.0 / (5 * s2));
    r = r + with_aux(FockState::basis_state(OccupationVector::parse("0000")), "31")
                .scaled(-1.0 / (5 * s2));
    return r;
}

FockState six_mode_output() {
    return with_aux(bell_target(BellKind::PhiPlus), "11").scaled(std::sqrt(2.0 / 27.0)) +
           six_mode_residual().scaled(5.0 / std::sqrt(27.0));
}

FockState five_mode_residual() {
    FockState r = with_aux(chi5_0(), "0").scaled(0.25 * std::sqrt(31.0 / 3.0));
    r = r + with_aux(chi5_1(), "1").scaled(0.25 * std::sqrt(14.0 / 3.0));
    r = r + with_aux(chi5_3(), "3").scaled(0.25 * std::sqrt(2.0 / 3.0));
    r = r + with_aux(FockState::basis_state(OccupationVector::parse("0000")), "4")
                .scaled(1.0 / (4 * s3));
    return r;
}

FockState five_mode_output() {
    return with_aux(bell_target(BellKind::PhiPlus), "2").scaled(1.0 / 3.0) +
           five_mode_residual().scaled(2 * s2 / 3.0);
}

FockState intermediate_state() {
    FockState r = with_aux(chi_p0(), "0").scaled(std::sqrt(5.0) / 3.0);
    r = r + with_aux(chi_p1(), "1").scaled(std::sqrt(5.0 / 2.0) / 3.0);
    r = r + with_aux(chi_p2(), "2").scaled(1.0 / 3.0);
    r = r + with_aux(FockState::basis_state(OccupationVector::parse("0000")), "3")
                .scaled(1.0 / (3 * s2));
    return r;
}

FockState chi1_prime() { return chi_p1(); }

std::vector<std::pair<std::string, FockState>> component_states() {
    return {{"chi00", chi00()},   {"chi01", chi01()},   {"chi10", chi10()},
            {"chi02", chi02()},   {"chi20", chi20()},   {"chi12", chi12()},
            {"chi21", chi21()},   {"chi30", chi30()},   {"chi03", chi03()},
            {"chi5_0", chi5_0()}, {"chi5_1", chi5_1()}, {"chi5_3", chi5_3()},
            {"chi_p0", chi_p0()}, {"chi_p1", chi_p1()}, {"chi_p2", chi_p2()},
            {"chi511_0", chi511_0()}, {"chi511_2", chi511_2()}};
}

std::vector<double> six_mode_residual_weights() {
    return {8.0 / 25, 4.0 / 25, 4.0 / 25, 2.0 / 25, 2.0 / 25,
            1.0 / 25, 1.0 / 25, 1.0 / 25, 1.0 / 25, 1.0 / 50, 1.0 / 50};
}

std::vector<double> five_mode_residual_weights() {
    return {31.0 / 48, 14.0 / 48, 2.0 / 48, 1.0 / 48};
}

std::vector<double> intermediate_weights() {
    return {5.0 / 9, 5.0 / 18, 1.0 / 9, 1.0 / 18};
}

std::vector<double> stage2_output_weights() { return {4.0 / 15, 11.0 / 15}; }

std::vector<double> stage2_claimed_residual_weights() {
    return {8.0 / 11, 8.0 / 11, 1.0 / 11};
}

}  // namespace bellforge::reference
