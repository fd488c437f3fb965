#pragma once
// Generated by tools/oracles.py. Do not edit by hand.

namespace oracle {

inline constexpr double F_0_re = -0.0;
inline constexpr double F_0_im = 1.7724538509055159;
inline constexpr double F_05_re = -0.8488727670040446;
inline constexpr double F_05_im = 1.380388447043143;
inline constexpr double F_1_re = -1.0761590138255368;
inline constexpr double F_1_im = 0.6520493321732922;
inline constexpr double F_m13_re = 0.9667950347696485;
inline constexpr double F_m13_im = 0.3270523408686265;
inline constexpr double dF_05_re = -1.1511272329959554;
inline constexpr double dF_05_im = -1.380388447043143;
inline constexpr double S_0_re = -0.5170939859895524;
inline constexpr double S_0_im = -0.8559286241582512;
inline constexpr double Sp_0_re = -1.4652276193068736;
inline constexpr double Sp_0_im = 0.8851910879770869;
inline constexpr double theta_p_0 = -1.7118572483165027;
inline constexpr double S_05_re = -0.9763114640745701;
inline constexpr double S_05_im = -0.216369880335894;
inline constexpr double Sp_05_re = -0.3097782192427358;
inline constexpr double Sp_05_im = 1.3977917180421726;
inline constexpr double theta_p_05 = -1.4317067549412792;
inline constexpr double ew_bump = -1.428771746625649;
inline constexpr double smooth_bump_1_1_2 = 5.141592653589793;
inline constexpr double smooth_bump_1_1_4 = 3.5707963267948966;
inline constexpr double smooth_bump_05_2_3 = 5.0;
inline constexpr double gauss_gap_r1 = -0.5632115608328048;
inline constexpr double gauss_gap_r2 = -0.050251186625034604;
inline constexpr double gauss_gap_r4 = -3.3550348294833095e-06;
inline constexpr double gauss_gap_r8 = -2.930355371248087e-24;
inline constexpr double gauss_gap_r32 = -0.0;
inline constexpr double embedded_x0 = 0.3;
inline constexpr double embedded_lambda = 1.9666666666666666;

}  // namespace oracle
