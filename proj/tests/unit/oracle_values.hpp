#pragma once
// Generated by tests/oracles/make_oracles.py. Do not edit by hand.

namespace oracle {

inline constexpr double quartic_coeff[] = {
    1.0,  // a_0
    0.75,  // a_1
    -1.3125,  // a_2
    5.203125,  // a_3
    -30.1611328125,  // a_4
    223.811279296875,  // a_5
    -1999.4629211425781,  // a_6
    20777.089485168457,  // a_7
    -245689.17728734016,  // a_8
    3256021.8877467513,  // a_9
    -47810431.0601249,  // a_10
    770833316.4092827,  // a_11
    -13544324689.228617,  // a_12
    257726234939.34158,  // a_13
    -5281751322678.386,  // a_14
    116016674658306.78,  // a_15
    -2719757615246876.0,  // a_16
    6.7787946929771784e+16,  // a_17
    -1.790210195015489e+18,  // a_18
    4.994011921119655e+19,  // a_19
    -1.4675140102044016e+21,  // a_20
    4.531136296684818e+22,  // a_21
    -1.4666523700373177e+24,  // a_22
    4.9662830694626735e+25,  // a_23
    -1.7558394925349217e+27,  // a_24
    6.470221042946597e+28,  // a_25
};
inline constexpr double quartic_pade_8_8_at_0p1 = 1.0652855093351001;
inline constexpr double quartic_ground_at_0p1 = 1.0652855095437177;
inline constexpr double quartic_ground_at_0p01 = 1.0073736720813826;
inline constexpr double euler_borel_at_1 = 0.59634736232319407;
inline constexpr double borel_order2_at_0p05 = 0.92078514445389392;
inline constexpr double bender_wu_large_order_n1 = 1.1695452018505142;
inline constexpr double rank_one_inv_sqrt_1em4 = -0.99004987500078124;
inline constexpr double rank_one_inv_sqrt_1em3 = -0.96887327079826306;
inline constexpr double rank_one_inv_1em4 = -0.99990196087855271;
inline constexpr double rank_one_inv_1em3 = -0.99905950981294312;
inline constexpr double rank_one_log_case_1em4 = -0.9991781984586613;
inline constexpr double rank_one_log_case_1em3 = -0.9940499088170754;
inline constexpr double wvn_potential_0p5 = -3.5694511699789483;
inline constexpr double wvn_potential_1 = 1.3492376273360162;
inline constexpr double wvn_potential_2 = 5.0587806415770347;
inline constexpr double wvn_potential_20 = -0.26029353431368167;
inline constexpr double wvn_potential_0p002 = -1.1946629347603143e-9;
inline constexpr double wvn_potential_0p0009 = -4.8988769011092802e-11;
inline constexpr double wvn_potential_0p0005 = -4.6666657555556282e-12;
inline constexpr long helium_kmax_99 = 4;
inline constexpr long helium_count_99 = 30;
inline constexpr long helium_kmax_alpha = 42;
inline constexpr long helium_count_alpha = 25585;
inline constexpr long helium_kmax_1 = 0;
inline constexpr long helium_count_1 = 0;
inline constexpr long helium_kmax_1e6 = 499;
inline constexpr long helium_count_1e6 = 41541750;
inline constexpr double laguerre4_nodes[] = {0.3225476896193924, 1.7457611011583465, 4.536620296921128, 9.395070912301133};
inline constexpr double laguerre4_weights[] = {0.6031541043416337, 0.35741869243779956, 0.038887908515005405, 0.0005392947055613296};
inline constexpr double trotter_sx_sz_n8 = 0.18274735214612056;
inline constexpr double trotter_sx_sz_n16 = 0.088430524583633929;
inline constexpr double angular_kernel_1_2 = 3.4513922952232027;
inline constexpr double a9_integral = 2.4674011002723397;
inline constexpr double odd_square_sum = 1.2337005501361698;
inline constexpr double berry_phase_theta_1 = -1.4441828987568201;
inline constexpr double gap_bound_0p3_0p4 = 0.8228756555322953;

}  // namespace oracle
