#pragma once

// Published error-bound reference values for the two example families and
// the two test functions, on the (n,x) grid {20,30,50} x {0.2,0.5,0.8}.
// Kept verbatim for side-by-side comparison; the norm convention behind
// them is not recoverable, so they are fixtures, not targets.

#include <array>
#include <stdexcept>
#include <string>

namespace sheffer {

inline constexpr std::array<int, 3> kFixtureN = {20, 30, 50};
inline constexpr std::array<double, 3> kFixtureX = {0.2, 0.5, 0.8};

// rows by n, columns by x
using FixtureGrid = std::array<std::array<double, 3>, 3>;

inline const FixtureGrid& fixture_bounds(const std::string& family,
                                         const std::string& f) {
    static const FixtureGrid ex1_f1 = {{{0.0885, 0.0608, 0.2148},
                                        {0.0600, 0.0405, 0.1600},
                                        {0.0391, 0.0260, 0.1144}}};
    static const FixtureGrid ex1_f2 = {{{0.1169, 0.7025, 1.9651},
                                        {0.0748, 0.5066, 1.4795},
                                        {0.0462, 0.3535, 1.0728}}};
    static const FixtureGrid ex2_f1 = {{{0.0559, 0.0426, 0.1806},
                                        {0.0427, 0.0317, 0.1422},
                                        {0.0311, 0.0224, 0.1066}}};
    static const FixtureGrid ex2_f2 = {{{0.0647, 0.5250, 1.6273},
                                        {0.0483, 0.4150, 1.3040},
                                        {0.0348, 0.3133, 0.9954}}};
    if (family == "example1" && f == "f1") return ex1_f1;
    if (family == "example1" && f == "f2") return ex1_f2;
    if (family == "example2" && f == "f1") return ex2_f1;
    if (family == "example2" && f == "f2") return ex2_f2;
    throw std::invalid_argument("no fixture table for family '" + family +
                                "', f '" + f + "'");
}

// the two reference test functions
inline double f1(double x) { return (x - 0.5) * (x - 1.0 / 3.0); }
inline double f2(double x) { return -4.0 * x * x * x; }

}  // namespace sheffer
