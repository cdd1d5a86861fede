/*
 * Copyright 2026 The msq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "msq/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <stdexcept>

namespace msq {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Model {
    VectorXd center;
    double c = 0;
    VectorXd g;
    MatrixXd h;

    double value(const VectorXd &x) const {
        VectorXd s = x - center;
        return c + g.dot(s) + 0.5 * s.dot(h * s);
    }
    VectorXd gradient(const VectorXd &x) const { return g + h * (x - center); }
};

// Minimizes g.s + s.H.s / 2 over |s| <= radius.
VectorXd trust_region_step(const VectorXd &g, const MatrixXd &h, double radius) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
    const VectorXd &ev = es.eigenvalues();
    const MatrixXd &q = es.eigenvectors();
    VectorXd gt = q.transpose() * g;
    auto step_norm = [&](double lam) {
        double s = 0;
        for (Eigen::Index i = 0; i < gt.size(); ++i) {
            double d = ev[i] + lam;
            s += gt[i] * gt[i] / (d * d);
        }
        return std::sqrt(s);
    };
    auto step = [&](double lam) {
        VectorXd st(gt.size());
        for (Eigen::Index i = 0; i < gt.size(); ++i) st[i] = -gt[i] / (ev[i] + lam);
        return VectorXd(q * st);
    };
    double lo = std::max(0.0, -ev.minCoeff());
    if (ev.minCoeff() > 0 && step_norm(0) <= radius) return step(0);
    double eps = 1e-14 * std::max(1.0, std::abs(lo));
    if (step_norm(lo + eps) < radius) {
        // Hard case: move along the lowest eigenvector to reach the boundary.
        VectorXd s = step(lo + eps);
        VectorXd u = q.col(0);
        double sn = s.norm();
        double tau = std::sqrt(std::max(0.0, radius * radius - sn * sn));
        return s + tau * u;
    }
    double hi = lo + g.norm() / radius + eps;
    lo += eps;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (step_norm(mid) > radius) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    VectorXd s = step(hi);
    double sn = s.norm();
    if (sn > radius) s *= radius / sn;
    return s;
}

class Solver {
   public:
    Solver(const Objective &f, const OptimizeOptions &opt, const IterationCallback &cb, size_t m)
        : f_(f), opt_(opt), cb_(cb), m_(m) {}

    OptimizeResult run(const VectorXd &x0) {
        const size_t npt = 2 * m_ + 1;
        delta_ = opt_.step;
        model_.center = x0;
        model_.g = VectorXd::Zero(static_cast<Eigen::Index>(m_));
        model_.h = MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
        for (size_t k = 0; k < npt && !done(); ++k) {
            VectorXd y = x0;
            if (k > 0) y[static_cast<Eigen::Index>((k - 1) / 2)] += (k % 2 ? 1 : -1) * delta_;
            evaluate_and_add(y);
        }
        bool want_geometry = false;
        while (!done() && pts_.size() == npt && delta_ >= opt_.x_tol) {
            if (!build()) {
                repair();
                continue;
            }
            size_t far = farthest();
            double far_dist = (pts_[far] - best_x()).norm();
            if (want_geometry && far_dist > 2 * delta_) {
                geometry_step(far);
                want_geometry = false;
                continue;
            }
            want_geometry = false;
            VectorXd s = trust_region_step(model_.g, model_.h, delta_);
            double pred = -(model_.g.dot(s) + 0.5 * s.dot(model_.h * s));
            double fb = vals_[best_];
            if (!(pred > 1e-15 * std::max(1.0, std::abs(fb))) || s.norm() < 1e-3 * delta_) {
                if (far_dist > 2 * delta_) {
                    geometry_step(far);
                } else {
                    delta_ *= 0.5;
                }
                continue;
            }
            VectorXd xn = best_x() + s;
            double fn = eval(xn);
            double ratio = (fb - fn) / pred;
            replace(choose_drop(xn), xn, fn);
            if (ratio >= 0.7) {
                delta_ = std::min(std::max(delta_, 2 * s.norm()), opt_.max_radius);
            } else if (ratio >= 0.1) {
                delta_ = std::max(0.5 * delta_, s.norm());
            } else if (far_dist > 2 * delta_) {
                want_geometry = true;
            } else {
                delta_ *= 0.5;
            }
        }
        OptimizeResult r;
        const VectorXd &xb = best_x();
        r.x.assign(xb.data(), xb.data() + xb.size());
        r.f = vals_[best_];
        r.evals = evals_;
        r.iters = evals_ - 1;
        r.improvements = improvements_;
        return r;
    }

   private:
    const Objective &f_;
    const OptimizeOptions &opt_;
    const IterationCallback &cb_;
    size_t m_;
    double delta_ = 0;
    std::vector<VectorXd> pts_;
    std::vector<double> vals_;
    size_t best_ = 0;
    int evals_ = 0;
    int improvements_ = 0;
    double best_seen_ = std::numeric_limits<double>::infinity();
    Model model_;
    MatrixXd winv_;  // inverse KKT matrix in coordinates (y - best) / delta
    size_t cycle_ = 0;

    bool done() const { return evals_ > opt_.max_iters || best_seen_ <= opt_.f_target; }
    const VectorXd &best_x() const { return pts_[best_]; }

    double eval(const VectorXd &x) {
        double v = f_(std::span<const double>(x.data(), static_cast<size_t>(x.size())));
        ++evals_;
        if (!std::isfinite(v)) v = std::numeric_limits<double>::max();
        if (v < best_seen_) {
            if (evals_ > 1) ++improvements_;
            best_seen_ = v;
        }
        if (cb_) cb_(evals_ - 1, best_seen_, evals_);
        return v;
    }

    void evaluate_and_add(const VectorXd &y) {
        double v = eval(y);
        pts_.push_back(y);
        vals_.push_back(v);
        if (v < vals_[best_]) best_ = pts_.size() - 1;
    }

    void replace(size_t t, const VectorXd &y, double v) {
        pts_[t] = y;
        vals_[t] = v;
        best_ = static_cast<size_t>(std::min_element(vals_.begin(), vals_.end()) - vals_.begin());
    }

    size_t farthest() const {
        size_t far = best_ == 0 ? 1 : 0;
        double d = -1;
        for (size_t t = 0; t < pts_.size(); ++t) {
            if (t == best_) continue;
            double dt = (pts_[t] - best_x()).squaredNorm();
            if (dt > d) {
                d = dt;
                far = t;
            }
        }
        return far;
    }

    VectorXd scaled(const VectorXd &y) const { return (y - best_x()) / delta_; }

    double lagrange(size_t t, const VectorXd &st) const {
        const auto npt = static_cast<Eigen::Index>(pts_.size());
        auto col = winv_.col(static_cast<Eigen::Index>(t));
        double v = col[npt] + col.segment(npt + 1, static_cast<Eigen::Index>(m_)).dot(st);
        for (Eigen::Index i = 0; i < npt; ++i) {
            double d = scaled(pts_[static_cast<size_t>(i)]).dot(st);
            v += 0.5 * col[i] * d * d;
        }
        return v;
    }

    // Least-change model update through all points, centered at the best one.
    bool build() {
        const auto npt = static_cast<Eigen::Index>(pts_.size());
        const auto m = static_cast<Eigen::Index>(m_);
        const Eigen::Index n = npt + m + 1;
        MatrixXd w = MatrixXd::Zero(n, n);
        std::vector<VectorXd> s(pts_.size());
        for (size_t i = 0; i < pts_.size(); ++i) s[i] = scaled(pts_[i]);
        for (Eigen::Index i = 0; i < npt; ++i) {
            for (Eigen::Index j = 0; j < npt; ++j) {
                double d = s[static_cast<size_t>(i)].dot(s[static_cast<size_t>(j)]);
                w(i, j) = 0.5 * d * d;
            }
            w(i, npt) = w(npt, i) = 1;
            for (Eigen::Index k = 0; k < m; ++k) w(i, npt + 1 + k) = w(npt + 1 + k, i) = s[static_cast<size_t>(i)][k];
        }
        Eigen::FullPivLU<MatrixXd> lu(w);
        if (!lu.isInvertible()) return false;
        winv_ = lu.inverse();
        if (!winv_.allFinite()) return false;
        VectorXd rhs = VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < npt; ++i) rhs[i] = vals_[static_cast<size_t>(i)] - model_.value(pts_[static_cast<size_t>(i)]);
        VectorXd sol = winv_ * rhs;
        const VectorXd &xb = best_x();
        Model next;
        next.center = xb;
        next.c = model_.value(xb) + sol[npt];
        next.g = model_.gradient(xb) + sol.segment(npt + 1, m) / delta_;
        next.h = model_.h;
        for (Eigen::Index i = 0; i < npt; ++i) {
            const VectorXd &si = s[static_cast<size_t>(i)];
            next.h += (sol[i] / (delta_ * delta_)) * si * si.transpose();
        }
        if (!next.g.allFinite() || !next.h.allFinite()) return false;
        model_ = std::move(next);
        return true;
    }

    size_t choose_drop(const VectorXd &xn) const {
        VectorXd st = scaled(xn);
        size_t drop = best_ == 0 ? 1 : 0;
        double score = -1;
        for (size_t t = 0; t < pts_.size(); ++t) {
            if (t == best_) continue;
            double dist = (pts_[t] - best_x()).norm() / delta_;
            double weight = std::max(1.0, dist * dist * dist * dist);
            double sc = std::abs(lagrange(t, st)) * weight;
            if (sc > score) {
                score = sc;
                drop = t;
            }
        }
        return drop;
    }

    // Replaces point t by the candidate at distance delta that maximizes
    // |l_t|, the Lagrange function of t.
    void geometry_step(size_t t) {
        const auto m = static_cast<Eigen::Index>(m_);
        const auto npt = static_cast<Eigen::Index>(pts_.size());
        std::vector<VectorXd> cand;
        for (Eigen::Index k = 0; k < m; ++k) {
            VectorXd e = VectorXd::Zero(m);
            e[k] = 1;
            cand.push_back(e);
            cand.push_back(-e);
        }
        auto col = winv_.col(static_cast<Eigen::Index>(t));
        VectorXd grad = col.segment(npt + 1, m);
        if (grad.norm() > 0) {
            cand.push_back(grad.normalized());
            cand.push_back(-grad.normalized());
        }
        VectorXd pick = cand[0];
        double best = -1;
        for (const auto &d : cand) {
            double v = std::abs(lagrange(t, d));
            if (v > best) {
                best = v;
                pick = d;
            }
        }
        VectorXd y = best_x() + delta_ * pick;
        double v = eval(y);
        replace(t, y, v);
    }

    // Degenerate interpolation set: move the point closest to another one
    // onto a coordinate direction around the best point.
    void repair() {
        size_t worst = farthest();
        double closest = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < pts_.size(); ++i) {
            if (i == best_) continue;
            for (size_t j = 0; j < pts_.size(); ++j) {
                if (j == i) continue;
                double d = (pts_[i] - pts_[j]).squaredNorm();
                if (d < closest) {
                    closest = d;
                    worst = i;
                }
            }
        }
        size_t k = cycle_++ % (2 * m_);
        VectorXd y = best_x();
        y[static_cast<Eigen::Index>(k / 2)] += (k % 2 ? -1 : 1) * delta_;
        double v = eval(y);
        replace(worst, y, v);
        model_.h.setZero();
        model_.g.setZero();
        model_.c = 0;
    }
};

OptimizeResult nelder_mead(const Objective &f, std::vector<double> x0, const OptimizeOptions &opt,
                           const IterationCallback &cb) {
    const size_t m = x0.size();
    const double dm = static_cast<double>(m);
    const double rho = 1, chi = 1 + 2 / dm, psi = 0.75 - 1 / (2 * dm), sigma = 1 - 1 / dm;
    OptimizeResult r;
    double best = std::numeric_limits<double>::infinity();
    auto eval = [&](const VectorXd &x) {
        double v = f(std::span<const double>(x.data(), m));
        ++r.evals;
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };
    std::vector<VectorXd> pts;
    std::vector<double> vals;
    auto build_simplex = [&](double edge) {
        pts.resize(1);
        vals.resize(1);
        for (size_t k = 0; k < m; ++k) {
            VectorXd y = pts[0];
            y[static_cast<Eigen::Index>(k)] += edge;
            pts.push_back(y);
            vals.push_back(eval(y));
        }
    };
    pts.push_back(Eigen::Map<const VectorXd>(x0.data(), static_cast<Eigen::Index>(m)));
    vals.push_back(eval(pts[0]));
    if (vals[0] > opt.f_target) build_simplex(opt.step);
    double restart_size = opt.step;
    std::vector<size_t> order(pts.size());
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        std::vector<VectorXd> p2;
        std::vector<double> v2;
        for (size_t i : order) {
            p2.push_back(std::move(pts[i]));
            v2.push_back(vals[i]);
        }
        pts = std::move(p2);
        vals = std::move(v2);
    };
    sort_simplex();
    best = vals[0];
    if (cb) cb(0, best, r.evals);
    while (r.iters < opt.max_iters && vals[0] > opt.f_target && pts.size() == m + 1) {
        double size = 0, spread = 0;
        for (size_t i = 1; i <= m; ++i) {
            size = std::max(size, (pts[i] - pts[0]).cwiseAbs().maxCoeff());
            spread = std::max(spread, std::abs(vals[i] - vals[0]));
        }
        if (size <= opt.x_tol && spread <= opt.f_tol) break;
        if (opt.restart_shrink > 0 && size < opt.restart_shrink * restart_size) {
            // The simplex has collapsed a lot since it was built; rebuild
            // it around the best vertex so it cannot stay degenerate.
            restart_size = 2 * size;
            build_simplex(restart_size);
            sort_simplex();
            ++r.iters;
            if (vals[0] < best) {
                best = vals[0];
                ++r.improvements;
            }
            if (cb) cb(r.iters, best, r.evals);
            continue;
        }
        VectorXd bar = VectorXd::Zero(static_cast<Eigen::Index>(m));
        for (size_t i = 0; i < m; ++i) bar += pts[i];
        bar /= dm;
        const VectorXd &worst = pts[m];
        VectorXd xr = bar + rho * (bar - worst);
        double fr = eval(xr);
        bool shrink = false;
        if (fr < vals[0]) {
            VectorXd xe = bar + rho * chi * (bar - worst);
            double fe = eval(xe);
            // Greedy expansion: keep the longer step whenever it still beats the best vertex.
            if (fe < vals[0]) {
                pts[m] = xe;
                vals[m] = fe;
            } else {
                pts[m] = xr;
                vals[m] = fr;
            }
        } else if (fr < vals[m - 1]) {
            pts[m] = xr;
            vals[m] = fr;
        } else if (fr < vals[m]) {
            VectorXd xc = bar + psi * rho * (bar - worst);
            double fc = eval(xc);
            if (fc <= fr) {
                pts[m] = xc;
                vals[m] = fc;
            } else {
                shrink = true;
            }
        } else {
            VectorXd xcc = bar - psi * (bar - worst);
            double fcc = eval(xcc);
            if (fcc < vals[m]) {
                pts[m] = xcc;
                vals[m] = fcc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (size_t i = 1; i <= m; ++i) {
                pts[i] = pts[0] + sigma * (pts[i] - pts[0]);
                vals[i] = eval(pts[i]);
            }
        }
        sort_simplex();
        ++r.iters;
        if (vals[0] < best) {
            best = vals[0];
            ++r.improvements;
        }
        if (cb) cb(r.iters, best, r.evals);
    }
    r.x.assign(pts[0].data(), pts[0].data() + m);
    r.f = vals[0];
    return r;
}

}  // namespace

OptimizerKind parse_optimizer(std::string_view name) {
    if (name == "nelder-mead") return OptimizerKind::NelderMead;
    if (name == "trust-region") return OptimizerKind::TrustRegion;
    throw std::invalid_argument("unknown optimizer \"" + std::string(name) + "\" (nelder-mead, trust-region)");
}

std::string_view optimizer_name(OptimizerKind k) {
    return k == OptimizerKind::NelderMead ? "nelder-mead" : "trust-region";
}

OptimizeResult minimize(const Objective &f, std::vector<double> x0, const OptimizeOptions &opt,
                        const IterationCallback &on_iter) {
    if (x0.empty()) throw std::invalid_argument("minimize needs at least one variable");
    if (opt.max_iters < 0) throw std::invalid_argument("iteration limit must be nonnegative");
    if (!(opt.step > 0) || !(opt.x_tol > 0)) throw std::invalid_argument("step and x_tol must be positive");
    if (opt.kind == OptimizerKind::NelderMead) return nelder_mead(f, std::move(x0), opt, on_iter);
    Solver s(f, opt, on_iter, x0.size());
    return s.run(Eigen::Map<const VectorXd>(x0.data(), static_cast<Eigen::Index>(x0.size())));
}

}  // namespace msq
