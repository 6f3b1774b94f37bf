#include <cmath>
#include <random>

#include "mourre/linalg.hpp"

namespace mourre {

PowerResult power_iteration_norm(const LinearMap& gram, std::size_t dim, double tol, int cap, std::uint64_t seed)
{
    PowerResult res;
    if (dim == 0) {
        res.converged = true;
        return res;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> v(dim), w(dim);
    auto normalize = [](std::vector<cplx>& x) {
        double s = 0.0;
        for (const auto& c : x) s += std::norm(c);
        s = std::sqrt(s);
        if (s > 0.0)
            for (auto& c : x) c /= s;
        return s;
    };
    for (auto& c : v) c = cplx(nd(rng), nd(rng));
    normalize(v);

    // stop when the geometric extrapolation of the remaining change is below tol,
    // a plain step test stops far too early when the top gap is small
    double prev = -1.0, prev_step = -1.0;
    for (int it = 1; it <= cap; ++it) {
        gram(v.data(), w.data());
        double rq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) rq += (std::conj(v[i]) * w[i]).real();
        res.iters = it;
        double nw = normalize(w);
        if (nw == 0.0) {
            res.sigma_max = 0.0;
            res.converged = true;
            return res;
        }
        rq = std::max(rq, 0.0);
        res.sigma_max = std::sqrt(rq);
        if (prev >= 0.0) {
            double step = std::abs(res.sigma_max - prev);
            double q = prev_step > 0.0 ? step / prev_step : 1.0;
            double remaining = q < 1.0 ? step * q / (1.0 - q) : INFINITY;
            if (step == 0.0 || (step <= tol * res.sigma_max && remaining <= tol * res.sigma_max)) {
                res.converged = true;
                return res;
            }
            prev_step = step;
        }
        prev = res.sigma_max;
        v.swap(w);
    }
    return res;
}

}  // namespace mourre
