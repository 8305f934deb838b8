#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace nanopteron {

struct GmresResult {
    bool converged = false;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Restart-free GMRES for A x = b from x = 0, Euclidean inner product.
inline GmresResult gmres(const std::function<std::vector<double>(const std::vector<double>&)>& A,
                         const std::vector<double>& b, std::vector<double>& x, double tol, int max_iter) {
    const std::size_t n = b.size();
    auto dot = [n](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += u[i] * v[i];
        return s;
    };
    GmresResult res;
    x.assign(n, 0.0);
    const double beta = std::sqrt(dot(b, b));
    if (beta == 0.0) {
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> V;
    std::vector<std::vector<double>> H;  // H[j] is column j, length j+2
    std::vector<double> cs, sn, g{beta};
    V.push_back(b);
    for (double& v : V[0]) v /= beta;

    int k = 0;
    double rel = 1.0;
    for (; k < max_iter; ++k) {
        std::vector<double> w = A(V[k]);
        std::vector<double> h(k + 2, 0.0);
        for (int pass = 0; pass < 2; ++pass) {  // classical Gram-Schmidt, twice
            for (int i = 0; i <= k; ++i) {
                const double c = dot(w, V[i]);
                h[i] += c;
                for (std::size_t t = 0; t < n; ++t) w[t] -= c * V[i][t];
            }
        }
        h[k + 1] = std::sqrt(dot(w, w));
        for (int i = 0; i < k; ++i) {
            const double t = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = t;
        }
        const double r = std::hypot(h[k], h[k + 1]);
        cs.push_back(r == 0.0 ? 1.0 : h[k] / r);
        sn.push_back(r == 0.0 ? 0.0 : h[k + 1] / r);
        const double hk1 = h[k + 1];
        h[k] = r;
        h[k + 1] = 0.0;
        g.push_back(-sn[k] * g[k]);
        g[k] = cs[k] * g[k];
        H.push_back(h);
        rel = std::abs(g[k + 1]) / beta;
        if (rel <= tol || hk1 == 0.0) {
            ++k;
            break;
        }
        for (double& v : w) v /= hk1;
        V.push_back(std::move(w));
    }

    std::vector<double> y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
        double s = g[i];
        for (int j = i + 1; j < k; ++j) s -= H[j][i] * y[j];
        y[i] = s / H[i][i];
    }
    for (int j = 0; j < k; ++j)
        for (std::size_t t = 0; t < n; ++t) x[t] += y[j] * V[j][t];

    res.iterations = k;
    res.relative_residual = rel;
    res.converged = rel <= tol;
    return res;
}

} // namespace nanopteron
