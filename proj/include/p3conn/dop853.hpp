// Adaptive embedded Runge-Kutta integrator of order 8(5,3) (Dormand-Prince
// DOP853 coefficients, Hairer & Wanner, "Solving Ordinary Differential
// Equations I", 2nd ed.). Steps can be forced to land exactly on a sorted list
// of checkpoints; an observer is invoked after every accepted step.
#ifndef P3CONN_DOP853_HPP
#define P3CONN_DOP853_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "types.hpp"

namespace p3conn {

struct IntegrationStats {
    long n_accepted = 0;
    long n_rejected = 0;
    double max_local_error = 0.0;  // largest accepted absolute local error estimate
};

namespace dop853_detail {

inline constexpr double c2 = 0.526001519587677318785587544488e-01;
inline constexpr double c3 = 0.789002279381515978178381316732e-01;
inline constexpr double c4 = 0.118350341907227396726757197510e+00;
inline constexpr double c5 = 0.281649658092772603273242802490e+00;
inline constexpr double c6 = 0.333333333333333333333333333333e+00;
inline constexpr double c7 = 0.25e+00;
inline constexpr double c8 = 0.307692307692307692307692307692e+00;
inline constexpr double c9 = 0.651282051282051282051282051282e+00;
inline constexpr double c10 = 0.6e+00;
inline constexpr double c11 = 0.857142857142857142857142857142e+00;

inline constexpr double a21 = 5.26001519587677318785587544488e-2;
inline constexpr double a31 = 1.97250569845378994544595329183e-2;
inline constexpr double a32 = 5.91751709536136983633785987549e-2;
inline constexpr double a41 = 2.95875854768068491816892993775e-2;
inline constexpr double a43 = 8.87627564304205475450678981324e-2;
inline constexpr double a51 = 2.41365134159266685502369798665e-1;
inline constexpr double a53 = -8.84549479328286085344864962717e-1;
inline constexpr double a54 = 9.24834003261792003115737966543e-1;
inline constexpr double a61 = 3.7037037037037037037037037037e-2;
inline constexpr double a64 = 1.70828608729473871279604482173e-1;
inline constexpr double a65 = 1.25467687566822425016691814123e-1;
inline constexpr double a71 = 3.7109375e-2;
inline constexpr double a74 = 1.70252211019544039314978060272e-1;
inline constexpr double a75 = 6.02165389804559606850219397283e-2;
inline constexpr double a76 = -1.7578125e-2;
inline constexpr double a81 = 3.70920001185047927108779319836e-2;
inline constexpr double a84 = 1.70383925712239993810214054705e-1;
inline constexpr double a85 = 1.07262030446373284651809199168e-1;
inline constexpr double a86 = -1.53194377486244017527936158236e-2;
inline constexpr double a87 = 8.27378916381402288758473766002e-3;
inline constexpr double a91 = 6.24110958716075717114429577812e-1;
inline constexpr double a94 = -3.36089262944694129406857109825e0;
inline constexpr double a95 = -8.68219346841726006818189891453e-1;
inline constexpr double a96 = 2.75920996994467083049415600797e1;
inline constexpr double a97 = 2.01540675504778934086186788979e1;
inline constexpr double a98 = -4.34898841810699588477366255144e1;
inline constexpr double a101 = 4.77662536438264365890433908527e-1;
inline constexpr double a104 = -2.48811461997166764192642586468e0;
inline constexpr double a105 = -5.90290826836842996371446475743e-1;
inline constexpr double a106 = 2.12300514481811942347288949897e1;
inline constexpr double a107 = 1.52792336328824235832596922938e1;
inline constexpr double a108 = -3.32882109689848629194453265587e1;
inline constexpr double a109 = -2.03312017085086261358222928593e-2;
inline constexpr double a111 = -9.3714243008598732571704021658e-1;
inline constexpr double a114 = 5.18637242884406370830023853209e0;
inline constexpr double a115 = 1.09143734899672957818500254654e0;
inline constexpr double a116 = -8.14978701074692612513997267357e0;
inline constexpr double a117 = -1.85200656599969598641566180701e1;
inline constexpr double a118 = 2.27394870993505042818970056734e1;
inline constexpr double a119 = 2.49360555267965238987089396762e0;
inline constexpr double a1110 = -3.0467644718982195003823669022e0;
inline constexpr double a121 = 2.27331014751653820792359768449e0;
inline constexpr double a124 = -1.05344954667372501984066689879e1;
inline constexpr double a125 = -2.00087205822486249909675718444e0;
inline constexpr double a126 = -1.79589318631187989172765950534e1;
inline constexpr double a127 = 2.79488845294199600508499808837e1;
inline constexpr double a128 = -2.85899827713502369474065508674e0;
inline constexpr double a129 = -8.87285693353062954433549289258e0;
inline constexpr double a1210 = 1.23605671757943030647266201528e1;
inline constexpr double a1211 = 6.43392746015763530355970484046e-1;

inline constexpr double b1 = 5.42937341165687622380535766363e-2;
inline constexpr double b6 = 4.45031289275240888144113950566e0;
inline constexpr double b7 = 1.89151789931450038304281599044e0;
inline constexpr double b8 = -5.8012039600105847814672114227e0;
inline constexpr double b9 = 3.1116436695781989440891606237e-1;
inline constexpr double b10 = -1.52160949662516078556178806805e-1;
inline constexpr double b11 = 2.01365400804030348374776537501e-1;
inline constexpr double b12 = 4.47106157277725905176885569043e-2;

inline constexpr double e31 = 0.244094488188976377952755905512e+00;
inline constexpr double e32 = 0.733846688281611857341361741547e+00;
inline constexpr double e33 = 0.220588235294117647058823529412e-01;

inline constexpr double e51 = 0.1312004499419488073250102996e-01;
inline constexpr double e56 = -0.1225156446376204440720569753e+01;
inline constexpr double e57 = -0.4957589496572501915214079952e+00;
inline constexpr double e58 = 0.1664377182454986536961530415e+01;
inline constexpr double e59 = -0.3503288487499736816886487290e+00;
inline constexpr double e510 = 0.3341791187130174790297318841e+00;
inline constexpr double e511 = 0.8192320648511571246570742613e-01;
inline constexpr double e512 = -0.2235530786388629525884427845e-01;

}  // namespace dop853_detail

// Integrate y' = f(x, y) from x0 to x1 (x0 < x1).
//   f           : void(double x, const std::vector<double>& y, std::vector<double>& dy)
//   observer    : void(double x, const std::vector<double>& y), called after each
//                 accepted step (not at x0); may be a no-op.
//   checkpoints : strictly increasing x values in (x0, x1]; steps are clamped to
//                 land on each exactly.
template <class RHS, class Observer>
IntegrationStats dop853_integrate(RHS&& f, double x0, double x1,
                                  std::vector<double>& y, double rtol, double atol,
                                  Observer&& observer,
                                  const std::vector<double>& checkpoints = {}) {
    using namespace dop853_detail;
    const std::size_t n = y.size();
    std::vector<double> yp(n), yw(n), ywp(n), k2(n), k3(n), k4(n), k5(n), k6(n),
        k7(n), k8(n), k9(n), k10(n);
    IntegrationStats stats;

    double x = x0;
    f(x, y, yp);

    // Initial step size (Hairer's HINIT): balance the solution and derivative
    // scales, refine with an explicit Euler trial estimating y''.
    double h;
    {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sci = atol + rtol * std::abs(y[i]);
            d0 += (y[i] / sci) * (y[i] / sci);
            d1 += (yp[i] / sci) * (yp[i] / sci);
        }
        d0 = std::sqrt(d0 / double(n));
        d1 = std::sqrt(d1 / double(n));
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, x1 - x0);
        std::vector<double> y1(n), f1(n);
        for (std::size_t i = 0; i < n; ++i) y1[i] = y[i] + h0 * yp[i];
        f(x0 + h0, y1, f1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sci = atol + rtol * std::abs(y[i]);
            d2 += ((f1[i] - yp[i]) / sci) * ((f1[i] - yp[i]) / sci);
        }
        d2 = std::sqrt(d2 / double(n)) / h0;
        const double dm = std::max(d1, d2);
        const double h1 =
            dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.125);
        h = std::min({100.0 * h0, h1, x1 - x0});
    }

    std::size_t next_cp = 0;
    double errold = 1e-4;
    bool last_rejected = false;
    const double alpha = 0.125, safe = 0.9, min_scale = 1.0 / 3.0, max_scale = 6.0;

    while (x < x1) {
        if (h < 1e-14 * std::max(1.0, std::abs(x)))
            throw convergence_error("dop853: step size underflow at x = " + std::to_string(x));
        while (next_cp < checkpoints.size() && checkpoints[next_cp] <= x + 1e-14)
            ++next_cp;
        double target = x1;
        if (next_cp < checkpoints.size()) target = std::min(target, checkpoints[next_cp]);
        bool clamped = false;
        double hs = h;
        if (x + hs >= target - 1e-14 * std::max(1.0, std::abs(target))) {
            hs = target - x;
            clamped = true;
        }

        // The 12-stage step.
        auto stage = [&](const std::vector<double>& w, double c, std::vector<double>& k) {
            f(x + c * hs, w, k);
        };
        for (std::size_t i = 0; i < n; ++i) yw[i] = y[i] + hs * a21 * yp[i];
        stage(yw, c2, k2);
        for (std::size_t i = 0; i < n; ++i) yw[i] = y[i] + hs * (a31 * yp[i] + a32 * k2[i]);
        stage(yw, c3, k3);
        for (std::size_t i = 0; i < n; ++i) yw[i] = y[i] + hs * (a41 * yp[i] + a43 * k3[i]);
        stage(yw, c4, k4);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a51 * yp[i] + a53 * k3[i] + a54 * k4[i]);
        stage(yw, c5, k5);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a61 * yp[i] + a64 * k4[i] + a65 * k5[i]);
        stage(yw, c6, k6);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a71 * yp[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        stage(yw, c7, k7);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a81 * yp[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] +
                                 a87 * k7[i]);
        stage(yw, c8, k8);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a91 * yp[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] +
                                 a97 * k7[i] + a98 * k8[i]);
        stage(yw, c9, k9);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a101 * yp[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                                 a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
        stage(yw, c10, k10);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a111 * yp[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                                 a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
        stage(yw, c11, k2);
        for (std::size_t i = 0; i < n; ++i)
            yw[i] = y[i] + hs * (a121 * yp[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                                 a127 * k7[i] + a128 * k8[i] + a129 * k9[i] +
                                 a1210 * k10[i] + a1211 * k2[i]);
        stage(yw, 1.0, k3);
        for (std::size_t i = 0; i < n; ++i) {
            k4[i] = b1 * yp[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                    b10 * k10[i] + b11 * k2[i] + b12 * k3[i];
            yw[i] = y[i] + hs * k4[i];
        }

        // Combined 5th/3rd order error estimate (Hairer's formulation).
        double err3 = 0.0, err5 = 0.0, tolscale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sci = atol + rtol * std::max(std::abs(y[i]), std::abs(yw[i]));
            tolscale = std::max(tolscale, sci);
            const double e3 = k4[i] - e31 * yp[i] - e32 * k9[i] - e33 * k3[i];
            const double e5 = e51 * yp[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] +
                              e59 * k9[i] + e510 * k10[i] + e511 * k2[i] + e512 * k3[i];
            err3 += (e3 / sci) * (e3 / sci);
            err5 += (e5 / sci) * (e5 / sci);
        }
        double deno = err5 + 0.01 * err3;
        if (deno <= 0.0) deno = 1.0;
        const double err = std::abs(hs) * err5 * std::sqrt(1.0 / (double(n) * deno));

        if (err <= 1.0) {
            x += hs;
            y = yw;
            f(x, y, yp);
            observer(x, y);
            ++stats.n_accepted;
            stats.max_local_error = std::max(stats.max_local_error, err * tolscale);
            errold = std::max(err, 1e-4);
            double scale = (err == 0.0) ? max_scale
                                        : std::clamp(safe * std::pow(err, -alpha),
                                                     min_scale, max_scale);
            if (last_rejected) scale = std::min(scale, 1.0);
            last_rejected = false;
            if (!clamped) h = hs * scale;
            else h = std::max(h, hs * scale);
        } else {
            ++stats.n_rejected;
            last_rejected = true;
            h = hs * std::max(safe * std::pow(err, -alpha), min_scale);
        }
    }
    (void)errold;
    return stats;
}

}  // namespace p3conn

#endif
