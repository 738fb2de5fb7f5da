#pragma once
// Frozen reference values (generated by tests/oracles/gen_linalg_ref.py
// with numpy/scipy).

namespace arcbie_test {

inline constexpr double kSqrtmInput[3][3] = {
    {0.2, 0.3, -0.1},
    {0.6, -0.8, 1.0},
    {-0.2, 1.0, 0.2},
};
inline constexpr double kSqrtmRe[3][3] = {
    {0.5194753209110953, 0.10402532254676446, -0.007111698520802969},
    {0.20805064509352905, 0.2796702726549805, 0.39195506590732987},
    {-0.014223397041606, 0.39195506590732976, 0.6550872931654391},
};
inline constexpr double kSqrtmIm[3][3] = {
    {0.07410238891155, -0.17770025645496448, 0.10712695897528615},
    {-0.3554005129099291, 0.8522635129037881, -0.5137887823257933},
    {0.21425391795057236, -0.5137887823257933, 0.30973860648381635},
};

inline constexpr int kSolveN = 8;
inline constexpr double kSolveXRe[8] = {
    0.28826025793027665, 0.07359135530499698, 0.005080920201550275, -0.021817278005214512, -0.02679188007772513, -0.019875517537780475, -0.008982162267020376, 0.0008850820711506931,
};
inline constexpr double kSolveXIm[8] = {
    -0.005253112559042621, 0.04976914660491813, 0.053192604850727895, 0.030506977085597083, 0.007896713083086173, -0.007208506602256458, -0.013411010437975301, -0.012098681762999266,
};

}  // namespace arcbie_test
