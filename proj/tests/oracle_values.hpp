#pragma once

// Generated by tests/oracle/derive.py (mpmath, 50 digits). Do not edit.

namespace oracle {

inline constexpr double kExpUniform_a1e1_n2 = 0.20052906877077351783;
inline constexpr double kExpBest_a1e1_n2 = 0.17206465502636001315;
inline constexpr double kExpUniform_a1e1_n4 = 0.11116173563916457035;
inline constexpr double kExpBest_a1e1_n4 = 0.086487929088527736867;
inline constexpr double kExpUniform_a1e1_n8 = 0.058827515717404305027;
inline constexpr double kExpBest_a1e1_n8 = 0.043302178306247638989;
inline constexpr double kExpUniform_a1e1_n64 = 0.0077519391881723072831;
inline constexpr double kExpBest_a1e1_n64 = 0.0054151741660426086217;
inline constexpr double kExpUniform_a2e05_n2 = 0.13032461425006973606;
inline constexpr double kExpBest_a2e05_n2 = 0.098123242835443818388;
inline constexpr double kExpUniform_a2e05_n4 = 0.084353951792799918863;
inline constexpr double kExpBest_a2e05_n4 = 0.049965564770111211372;
inline constexpr double kExpUniform_a2e05_n8 = 0.050132267192693379456;
inline constexpr double kExpBest_a2e05_n8 = 0.025105560766409127364;
inline constexpr double kExpUniform_a2e05_n64 = 0.0075758278207842456986;
inline constexpr double kExpBest_a2e05_n64 = 0.0031433510873933965436;
inline constexpr double kBenfordUniform_b2_n2 = 0.13463168434671355398;
inline constexpr double kBenfordBest_b2_n2 = 0.12384212936487751199;
inline constexpr double kBenfordUniform_b2_n8 = 0.035648268909191307985;
inline constexpr double kBenfordBest_b2_n8 = 0.030942725300760717306;
inline constexpr double kBenfordUniform_b2_n64 = 0.0045282931647144627873;
inline constexpr double kBenfordBest_b2_n64 = 0.0038676947332630009693;
inline constexpr double kBenfordUniform_b10_n2 = 0.23208150100153200404;
inline constexpr double kBenfordBest_b10_n2 = 0.21660657263822857878;
inline constexpr double kBenfordUniform_b10_n8 = 0.059515242187231900006;
inline constexpr double kBenfordBest_b10_n8 = 0.053882210001467753278;
inline constexpr double kBenfordUniform_b10_n64 = 0.007481676979204517139;
inline constexpr double kBenfordBest_b10_n64 = 0.0067330414491590826579;
inline constexpr double kLimitBestExp1 = 0.34657359027997265471;
inline constexpr double kLimitBestPareto1 = 0.39269908169872415481;
inline constexpr double kLimitBestNormal = 0.39317972148025601363;
inline constexpr double kLimitBestNormalQuad = 0.39317972148025601363;
inline constexpr double kLimitBestBenford2 = 0.24753231469230695363;
inline constexpr double kLimitBestBenford10 = 0.4309123809297295809;
inline constexpr double kParetoHalfC1 = 0.45082212926375483591;
inline constexpr double kParetoHalfC2 = 0.91027549254306472012;
inline constexpr double kPareto1SecondCoeff = 0.009183382072342555839;
inline constexpr double kLi12Small = 0.00010000707164521213914;
inline constexpr double kDensityExp_0 = 0.72134752044448170368;
inline constexpr double kDensityNormal_0 = 0.36265123715013245248;
inline constexpr double kDensityExp_0p5 = 0.54467605060898702015;
inline constexpr double kDensityNormal_0p5 = 0.33113453244426766555;
inline constexpr double kDensityExp_2 = 0.17197346446078280398;
inline constexpr double kDensityNormal_2 = 0.06514230280729933977;
inline constexpr double kExpOneAtomX = 0.74902345285221498936;
inline constexpr double kExpOneAtomError = 0.33741580717119967545;

}  // namespace oracle
