#pragma once
// Generated by tools/oracle/oracle.py; do not edit by hand.

namespace oracle {

struct SpecialHermiteCase { int a, b; double zr, zi, re, im; };
inline constexpr SpecialHermiteCase kSpecialHermite[] = {
    {0, 0, 1.0, 0.0, 0.3106965603769277, 0.0},
    {1, 0, 0.7, -0.4, 0.16784957838360579, -0.09591404479063188},
    {0, 2, 1.3, 0.9, 0.06643756293796738, -0.17666351963050414},
    {3, 1, -0.5, 1.1, -0.12319243778208239, -0.1411580016253027},
    {2, 5, 2.1, -0.3, -0.06585089307089324, -0.029857858348914326},
    {4, 4, 0.9, 0.9, -0.1617952292940349, -6.195812669082997e-36},
    {6, 3, -1.7, -1.2, -0.001109430866773836, 0.00395944969153838},
    {8, 8, 2.5, 0.5, -0.09983405261911336, -1.0924109347734451e-35},
    {5, 8, 0.2, -2.9, 0.014574041368125906, 0.06954635342022923},
    {7, 2, 1.0, 1.0, -0.04942145860888148, -0.04942145860888148},
};

struct LaguerreCase { int a, b; double x, value; };
inline constexpr LaguerreCase kLaguerre[] = {
    {0, 0, 1.0, 1.0},
    {1, 0, 1.0, 0.0},
    {3, 2, 0.7, 4.167833333333333},
    {5, 0, 2.5, 1.0325520833333333},
    {8, 3, 4.0, 3.7555555555555555},
    {12, 1, 9.5, 22.683934378906585},
    {20, 0, 1.5, -0.3415329100484649},
};

struct BesselCase { double x, value; };
inline constexpr BesselCase kBesselJ0[] = {
    {0.0, 1.0},
    {0.5, 0.9384698072408129},
    {1.0, 0.7651976865579666},
    {2.404825557695773, -6.10876525973673e-17},
    {3.7, -0.39923020337119114},
    {8.0, 0.1716508071375539},
    {15.25, -0.06411001866964823},
};
inline constexpr double kJ0FirstZero = 2.4048255576957724;

struct EigenCase { int l, k; double w, value; };
inline constexpr EigenCase kAveragedEigenN1[] = {
    {0, 1, 1.0, 0.3032653298563167},
    {1, 0, 1.4142135623730951, 6.876149413934062e-33},
    {2, 1, 1.3, 0.0817548376547333},
    {3, 2, 0.8, 0.18481632242187368},
    {0, 3, 2.2, 0.2100400927306239},
    {4, 1, 1.7, 0.12280042230072337},
    {1, 1, 3.0, 0.15622026381903242},
    {5, 0, 0.9, 0.06412857955567978},
};

struct FlowCase { int n; double nu[4]; double lambda, s; double x[4]; double u; };
inline constexpr FlowCase kFlow[] = {
    {1, {0.6, 0.8, 0.0, 0.0}, 1.0, 2.0, {-0.5873390131423056, 1.5771260433888317, 0.0, 0.0}, 0.5453512865871336},
    {1, {1.0, 0.0, 0.0, 0.0}, 1.0, 6.283185307179586, {-2.858824288409778e-15, -1.7312540290248535e-15, 0.0, 0.0}, 3.1415926535895142},
    {1, {0.0, 1.0, 0.0, 0.0}, -0.7, 3.3, {2.3909994794208016, 1.0557218257992453, 0.0, 0.0}, -1.6030558387147513},
    {2, {0.5, 0.5, 0.5, 0.5}, 1.4, 1.9, {-0.508238242481074, -0.508238242481074, 0.8390891460027498, 0.8390891460027498}, 0.5604103915993605},
    {2, {0.1, -0.7, 0.7, 0.1}, -0.3, 7.0, {3.799044032949294, -1.5125398206474192, 1.5125398206474192, 3.799044032949294}, -6.871059074172589},
};

// (0,0) entry of the transform of e^{-|x|^2/2 - u^2/2} at mu = 2.
inline constexpr double kGft00Re = 1.0657389614352577;
inline constexpr double kGft00Im = 0.0;
// Scalar transform of the same Gaussian at eta = (0.3, -0.7).
inline constexpr double kScalarFtRe = 11.784859325957102;
inline constexpr double kScalarFtIm = 0.0;

}  // namespace oracle
