#include "rplan/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <vector>

namespace rplan {

namespace {

enum class VStat : char { Basic = 'B', AtLower = 'L', AtUpper = 'U', Free = 'F' };

// Nearest power of two to 1/v, clamped; exact to multiply/divide by.
double pow2_scale(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
    int e = 0;
    std::frexp(v, &e); // v = f * 2^e, f in [0.5,1)
    double s = std::ldexp(1.0, -e + 1);
    if (s > 1e12) s = 1e12;
    if (s < 1e-12) s = 1e-12;
    return s;
}

struct Eta {
    int p = 0;                    // pivot row position
    double wp = 1.0;              // pivot element
    std::vector<int> idx;         // nonzero rows of w, excluding p
    std::vector<double> val;
};

class Simplex {
  public:
    Simplex(const LinearProgram& lp, const SimplexOptions& opts) : lp_(lp), o_(opts) {
        m_ = lp.num_rows();
        n_ = lp.num_vars();
        N_ = n_ + m_;
        build_scaled();
        iter_limit_ = o_.max_iterations > 0
                          ? o_.max_iterations
                          : std::max<long>(100000, 60L * (m_ + n_));
    }

    Solution run(const BasisHint& warm) {
        init_basis(warm);
        if (!factorize()) {
            crash_slack_basis();
            if (!factorize())
                throw NumericalFailure("simplex: slack basis factorization failed");
        }
        compute_xb();

        devex_w_.assign(N_, 1.0);
        y_.assign(m_, 0.0);
        d_.assign(N_, 0.0);
        duals_fresh_ = false;

        long iter = 0;
        long n_flips = 0, n_pivots = 0, n_degen = 0;
        int degen_run = 0;
        bool bland = false;
        bool verified = false; // fresh factorization behind the current duals
        int pivots_since_refactor = 0;
        int best_phase = 0;       // 1 = infeasible, 2 = feasible
        double best_merit = kInf; // phase-1 infeasibility or phase-2 objective
        long last_progress = 0;

        std::vector<double> w(m_), rho(m_);

        while (true) {
            if (++iter > iter_limit_)
                throw NumericalFailure(
                    "simplex: iteration limit; pivot breakdown after anti-cycling fallback");

            const bool feasible = classify_infeasibilities();

            if (iter % 32 == 1) { // stall detection on a coarse cadence
                int phase = feasible ? 2 : 1;
                double merit = current_merit(feasible);
                bool progressed = phase > best_phase ||
                                  (phase == best_phase &&
                                   merit < best_merit - 1e-9 * (1.0 + std::abs(best_merit)));
                if (progressed) {
                    best_phase = phase;
                    best_merit = merit;
                    last_progress = iter;
                    if (bland) {
                        bland = false;
                        degen_run = 0;
                    }
                } else if (!bland && iter - last_progress > 4000) {
                    bland = true; // stalled: anti-cycling rule until progress
                }
            }
            if (o_.log_every > 0 && iter % o_.log_every == 0)
                std::fprintf(stderr,
                             "[simplex] it=%ld phase=%d merit=%.8g flips=%ld pivots=%ld "
                             "degen=%ld bland=%d\n",
                             iter, feasible ? 2 : 1, current_merit(feasible), n_flips,
                             n_pivots, n_degen, bland ? 1 : 0);

            // phase 1 recomputes duals exactly every iteration (the objective
            // follows the violation set); phase 2 re-prices incrementally
            if (!feasible || !duals_fresh_) {
                std::vector<double> cb(m_);
                for (int p = 0; p < m_; ++p)
                    cb[p] = feasible ? cost_at(head_[p]) : static_cast<double>(viol_sign_[p]);
                btran(cb, y_);
                for (int j = 0; j < N_; ++j)
                    d_[j] = vstat_[j] == VStat::Basic ? 0.0 : reduced_cost(j, y_, feasible);
                duals_fresh_ = feasible;
            }

            int q = -1;
            int dir = 0;
            price(bland, q, dir);
            if (q < 0) {
                if (perturbed_) { // optimal for the perturbed costs only
                    remove_perturbation();
                    duals_fresh_ = false;
                    verified = false;
                    continue;
                }
                if (!verified) { // confirm on a drift-free factorization
                    if (!factorize())
                        throw NumericalFailure("simplex: refactorization failed");
                    compute_xb();
                    pivots_since_refactor = 0;
                    duals_fresh_ = false;
                    verified = true;
                    continue;
                }
                if (!feasible) return finish(SolveStatus::Infeasible, iter);
                return finish(SolveStatus::Optimal, iter);
            }
            verified = false;

            ftran_column(q, w);

            int p_leave = -1;
            double step = 0.0;
            int kind = ratio_test(q, dir, feasible, bland, w, p_leave, step);
            if (kind == 2) {
                if (perturbed_) { // a perturbed ray need not be a true ray
                    remove_perturbation();
                    duals_fresh_ = false;
                    continue;
                }
                if (!feasible)
                    throw NumericalFailure("simplex: unbounded infeasibility direction");
                return finish(SolveStatus::Unbounded, iter);
            }

            if (step <= 1e-11) {
                ++degen_run;
                ++n_degen;
            } else {
                degen_run = 0;
            }
            // deterministic bound perturbation first, Bland's rule as the
            // last-resort anti-cycling guarantee
            if (!perturbed_ && !bland && perturb_rounds_ < 5 && iter > 2000 &&
                n_degen * 2 > iter) {
                apply_perturbation();
                ++perturb_rounds_;
                degen_run = 0;
                n_degen = iter / 4; // hysteresis for the re-trigger
                duals_fresh_ = false;
            }
            if (!bland && degen_run > o_.degenerate_limit) bland = true;

            if (kind == 1) { // bound flip: basis, duals and weights unchanged
                ++n_flips;
                apply_flip(q, dir, step, w);
                continue;
            }

            ++n_pivots;
            const int j_out = head_[p_leave];
            const double alpha_q = w[p_leave];
            const double d_q = d_[q];

            // pivot row in the pre-pivot basis drives both the devex weights
            // and the incremental dual update
            std::vector<double> unit(m_, 0.0);
            unit[p_leave] = 1.0;
            btran(unit, rho);

            apply_pivot(q, dir, step, p_leave, w);
            update_after_pivot(q, j_out, alpha_q, d_q, feasible, rho);

            if (++pivots_since_refactor >= o_.refactor_every) {
                if (!factorize())
                    throw NumericalFailure("simplex: basis refactorization failed");
                compute_xb();
                pivots_since_refactor = 0;
                duals_fresh_ = false;
            }
        }
    }

  private:
    const LinearProgram& lp_;
    SimplexOptions o_;
    int m_ = 0, n_ = 0, N_ = 0;
    long iter_limit_ = 0;

    // scaled problem, CSC over structural columns; slack j>=n_ is e_{j-n_}
    std::vector<int> cstart_, crow_;
    std::vector<double> cval_;
    std::vector<double> cost_, lb_, ub_, b_;
    std::vector<double> rscale_, cscale_;

    std::vector<int> head_;        // basic column per row position
    std::vector<VStat> vstat_;     // per column
    std::vector<double> xb_;       // basic values per row position
    std::vector<int> viol_sign_;   // +1 above ub, -1 below lb, 0 feasible
    std::vector<int> pos_of_col_;  // column -> basis position or -1

    bool perturbed_ = false;
    int perturb_rounds_ = 0;
    std::vector<double> lb_orig_, ub_orig_;
    std::vector<double> devex_w_; // reference weights, reset on explosion
    std::vector<double> y_;       // duals of the current phase objective
    std::vector<double> d_;       // cached reduced costs per column
    bool duals_fresh_ = false;    // phase-2 incremental cache validity

    Eigen::SparseMatrix<double> bmat_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
    std::vector<Eta> etas_;

    double cost_at(int j) const { return j < n_ ? cost_[j] : 0.0; }

    // splitmix64-hashed multiplier in [0.5, 1): deterministic per column
    static double column_noise(int j) {
        std::uint64_t z = static_cast<std::uint64_t>(j) + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        return 0.5 + 0.5 * static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    // anti-degeneracy: expand every finite bound (slacks included) by a tiny
    // deterministic amount so degenerate vertices become generic; removed
    // before the final certification pass, followed by a cleanup reentry
    void apply_perturbation() {
        if (perturbed_) return;
        lb_orig_ = lb_;
        ub_orig_ = ub_;
        const double delta = 3e-8;
        const int salt = perturb_rounds_ * N_;
        for (int j = 0; j < N_; ++j) {
            if (std::isfinite(lb_[j]))
                lb_[j] -= delta * (1.0 + std::abs(lb_[j])) * column_noise(j + salt);
            if (std::isfinite(ub_[j]))
                ub_[j] += delta * (1.0 + std::abs(ub_[j])) * column_noise(j + salt + 1);
        }
        perturbed_ = true;
    }

    void remove_perturbation() {
        if (!perturbed_) return;
        lb_ = lb_orig_;
        ub_ = ub_orig_;
        perturbed_ = false;
        compute_xb(); // nonbasic values snap back onto the true bounds
    }

    void build_scaled() {
        const auto& rows = lp_.rows();
        rscale_.assign(m_, 1.0);
        cscale_.assign(n_, 1.0);
        if (o_.scale) {
            for (int pass = 0; pass < 2; ++pass) {
                std::vector<double> rmax(m_, 0.0);
                for (int i = 0; i < m_; ++i)
                    for (const auto& e : rows[i])
                        rmax[i] = std::max(rmax[i], std::abs(e.value) * rscale_[i] * cscale_[e.col]);
                for (int i = 0; i < m_; ++i)
                    if (rmax[i] > 0) rscale_[i] *= pow2_scale(rmax[i]);
                std::vector<double> cmax(n_, 0.0);
                for (int i = 0; i < m_; ++i)
                    for (const auto& e : rows[i])
                        cmax[e.col] = std::max(cmax[e.col], std::abs(e.value) * rscale_[i] * cscale_[e.col]);
                for (int j = 0; j < n_; ++j)
                    if (cmax[j] > 0) cscale_[j] *= pow2_scale(cmax[j]);
            }
        }
        // CSC assembly of scaled structural columns
        std::vector<int> cnt(n_, 0);
        for (const auto& r : rows)
            for (const auto& e : r) cnt[e.col]++;
        cstart_.assign(n_ + 1, 0);
        for (int j = 0; j < n_; ++j) cstart_[j + 1] = cstart_[j] + cnt[j];
        crow_.resize(cstart_[n_]);
        cval_.resize(cstart_[n_]);
        std::vector<int> fill(cstart_.begin(), cstart_.end() - 1);
        for (int i = 0; i < m_; ++i)
            for (const auto& e : rows[i]) {
                int k = fill[e.col]++;
                crow_[k] = i;
                cval_[k] = e.value * rscale_[i] * cscale_[e.col];
            }

        cost_.resize(n_);
        lb_.resize(N_);
        ub_.resize(N_);
        for (int j = 0; j < n_; ++j) {
            cost_[j] = lp_.objective()[j] * cscale_[j];
            lb_[j] = lp_.lower_bounds()[j] / cscale_[j];
            ub_[j] = lp_.upper_bounds()[j] / cscale_[j];
        }
        b_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            b_[i] = lp_.rhs()[i] * rscale_[i];
            switch (lp_.senses()[i]) {
                case RowSense::LE: lb_[n_ + i] = 0.0; ub_[n_ + i] = kInf; break;
                case RowSense::GE: lb_[n_ + i] = -kInf; ub_[n_ + i] = 0.0; break;
                case RowSense::EQ: lb_[n_ + i] = 0.0; ub_[n_ + i] = 0.0; break;
            }
        }
    }

    double nonbasic_value(int j) const {
        switch (vstat_[j]) {
            case VStat::AtLower: return lb_[j];
            case VStat::AtUpper: return ub_[j];
            default: return 0.0;
        }
    }

    void crash_slack_basis() {
        vstat_.assign(N_, VStat::AtLower);
        for (int j = 0; j < n_; ++j) {
            if (std::isfinite(lb_[j]))
                vstat_[j] = VStat::AtLower;
            else if (std::isfinite(ub_[j]))
                vstat_[j] = VStat::AtUpper;
            else
                vstat_[j] = VStat::Free;
        }
        head_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            head_[i] = n_ + i;
            vstat_[n_ + i] = VStat::Basic;
        }
    }

    void init_basis(const BasisHint& warm) {
        if (warm.statuses.size() == static_cast<std::size_t>(N_)) {
            vstat_.resize(N_);
            head_.clear();
            bool ok = true;
            for (int j = 0; j < N_; ++j) {
                char c = warm.statuses[j];
                if (c == 'B') {
                    head_.push_back(j);
                    vstat_[j] = VStat::Basic;
                } else if (c == 'L' || c == 'U' || c == 'F') {
                    vstat_[j] = static_cast<VStat>(c);
                    // repair hints that park a variable on a missing bound
                    if (c == 'L' && !std::isfinite(lb_[j]))
                        vstat_[j] = std::isfinite(ub_[j]) ? VStat::AtUpper : VStat::Free;
                    if (c == 'U' && !std::isfinite(ub_[j]))
                        vstat_[j] = std::isfinite(lb_[j]) ? VStat::AtLower : VStat::Free;
                } else {
                    ok = false;
                    break;
                }
            }
            if (ok && static_cast<int>(head_.size()) == m_) return;
        }
        crash_slack_basis();
    }

    bool factorize() {
        etas_.clear();
        if (m_ == 0) {
            pos_of_col_.assign(N_, -1);
            return true;
        }
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(cstart_[n_] + m_);
        for (int p = 0; p < m_; ++p) {
            int j = head_[p];
            if (j >= n_) {
                trips.emplace_back(j - n_, p, 1.0);
            } else {
                for (int k = cstart_[j]; k < cstart_[j + 1]; ++k)
                    trips.emplace_back(crow_[k], p, cval_[k]);
            }
        }
        bmat_.resize(m_, m_);
        bmat_.setFromTriplets(trips.begin(), trips.end());
        bmat_.makeCompressed();
        lu_.compute(bmat_);
        if (lu_.info() != Eigen::Success) return false;
        pos_of_col_.assign(N_, -1);
        for (int p = 0; p < m_; ++p) pos_of_col_[head_[p]] = p;
        return true;
    }

    void compute_xb() {
        if (m_ == 0) {
            xb_.clear();
            return;
        }
        Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b_.data(), m_);
        for (int j = 0; j < N_; ++j) {
            if (vstat_[j] == VStat::Basic) continue;
            double v = nonbasic_value(j);
            if (v == 0.0) continue;
            if (j >= n_) {
                rhs[j - n_] -= v;
            } else {
                for (int k = cstart_[j]; k < cstart_[j + 1]; ++k)
                    rhs[crow_[k]] -= cval_[k] * v;
            }
        }
        Eigen::VectorXd sol = lu_.solve(rhs);
        xb_.assign(sol.data(), sol.data() + m_);
    }

    // FTRAN: w = B^-1 a_q through LU then eta file.
    void ftran_column(int q, std::vector<double>& w) {
        w.assign(m_, 0.0);
        if (m_ == 0) return;
        Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
        if (q >= n_) {
            a[q - n_] = 1.0;
        } else {
            for (int k = cstart_[q]; k < cstart_[q + 1]; ++k)
                a[crow_[k]] = cval_[k];
        }
        Eigen::VectorXd v = lu_.solve(a);
        w.assign(v.data(), v.data() + m_);
        for (const Eta& e : etas_) {
            double alpha = w[e.p] / e.wp;
            if (alpha != 0.0)
                for (std::size_t k = 0; k < e.idx.size(); ++k)
                    w[e.idx[k]] -= alpha * e.val[k];
            w[e.p] = alpha;
        }
    }

    // BTRAN: y = B^-T c through eta file (backward) then LU transpose.
    void btran(const std::vector<double>& c, std::vector<double>& y) {
        y.assign(m_, 0.0);
        if (m_ == 0) return;
        std::vector<double> u = c;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = u[it->p];
            for (std::size_t k = 0; k < it->idx.size(); ++k)
                s -= it->val[k] * u[it->idx[k]];
            u[it->p] = s / it->wp;
        }
        Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(u.data(), m_);
        Eigen::VectorXd sol = lu_.adjoint().solve(rhs);
        y.assign(sol.data(), sol.data() + m_);
    }

    // Marks basic bound violations; returns true when none (phase 2).
    bool classify_infeasibilities() {
        viol_sign_.assign(m_, 0);
        bool feasible = true;
        for (int p = 0; p < m_; ++p) {
            int j = head_[p];
            double tol = std::max(o_.feas_tol, 1e-7) * (1.0 + std::abs(xb_[p]));
            if (std::isfinite(ub_[j]) && xb_[p] > ub_[j] + tol) {
                viol_sign_[p] = 1;
                feasible = false;
            } else if (std::isfinite(lb_[j]) && xb_[p] < lb_[j] - tol) {
                viol_sign_[p] = -1;
                feasible = false;
            }
        }
        return feasible;
    }

    double reduced_cost(int j, const std::vector<double>& y, bool phase2) const {
        double d = phase2 ? cost_at(j) : 0.0;
        if (j >= n_) {
            d -= y[j - n_];
        } else {
            for (int k = cstart_[j]; k < cstart_[j + 1]; ++k)
                d -= cval_[k] * y[crow_[k]];
        }
        return d;
    }

    double current_merit(bool feasible) const {
        double merit = 0.0;
        if (feasible) {
            for (int p = 0; p < m_; ++p)
                if (head_[p] < n_) merit += cost_[head_[p]] * xb_[p];
            for (int j = 0; j < n_; ++j)
                if (vstat_[j] != VStat::Basic) merit += cost_[j] * nonbasic_value(j);
        } else {
            for (int p = 0; p < m_; ++p) {
                int j = head_[p];
                if (viol_sign_[p] > 0) merit += xb_[p] - ub_[j];
                if (viol_sign_[p] < 0) merit += lb_[j] - xb_[p];
            }
        }
        return merit;
    }

    // entering choice over the cached reduced costs
    void price(bool bland, int& q, int& dir) const {
        q = -1;
        dir = 0;
        const bool devex = o_.pricing == SimplexOptions::Pricing::Devex;
        double best = 0.0;
        for (int j = 0; j < N_; ++j) {
            VStat s = vstat_[j];
            if (s == VStat::Basic) continue;
            if (lb_[j] == ub_[j] && s != VStat::Free) continue; // fixed var never enters
            double d = d_[j];
            int dj = 0;
            if (s == VStat::AtLower && d < -o_.opt_tol)
                dj = +1;
            else if (s == VStat::AtUpper && d > o_.opt_tol)
                dj = -1;
            else if (s == VStat::Free && std::abs(d) > o_.opt_tol)
                dj = d < 0 ? +1 : -1;
            else
                continue;
            if (bland) { // first eligible index
                q = j;
                dir = dj;
                return;
            }
            double score = devex ? d * d / devex_w_[j] : std::abs(d);
            if (score > best) {
                best = score;
                q = j;
                dir = dj;
            }
        }
    }

    // One fused sweep after a pivot: Forrest-Goldfarb devex weights, and in
    // phase 2 the incremental dual / reduced-cost update
    //   y' = y + (d_q/alpha_q) rho,  d'_j = d_j - (d_q/alpha_q) a_j'rho.
    // rho is the pivot row of the pre-pivot basis.
    void update_after_pivot(int q, int j_out, double alpha_q, double d_q, bool phase2,
                            const std::vector<double>& rho) {
        const bool devex = o_.pricing == SimplexOptions::Pricing::Devex;
        const double dual_step = d_q / alpha_q;
        const double ratio = devex_w_[q] / (alpha_q * alpha_q);
        const bool update_duals = phase2 && duals_fresh_;
        double biggest = 1.0;
        for (int j = 0; j < N_; ++j) {
            if (vstat_[j] == VStat::Basic) continue;
            double alpha;
            if (j >= n_) {
                alpha = rho[j - n_];
            } else {
                alpha = 0.0;
                for (int k = cstart_[j]; k < cstart_[j + 1]; ++k)
                    alpha += cval_[k] * rho[crow_[k]];
            }
            if (alpha == 0.0) continue;
            if (update_duals) d_[j] -= dual_step * alpha;
            if (devex) {
                double cand = alpha * alpha * ratio;
                if (cand > devex_w_[j]) devex_w_[j] = cand;
                if (devex_w_[j] > biggest) biggest = devex_w_[j];
            }
        }
        d_[q] = 0.0; // entered the basis
        if (update_duals)
            for (int i = 0; i < m_; ++i) y_[i] += dual_step * rho[i];
        if (devex) {
            devex_w_[j_out] = std::max(ratio, 1.0);
            if (biggest > 1e8) devex_w_.assign(N_, 1.0); // new reference framework
        }
    }

    // Breakpoint of basic position p along the direction, against bounds
    // relaxed outward by `relax` times the bound magnitude. Returns +inf
    // when the position never blocks.
    double breakpoint(int p, double sigma, bool phase2, const std::vector<double>& w,
                      double relax) const {
        double wi = w[p];
        if (std::abs(wi) < o_.pivot_tol) return kInf;
        double delta = sigma * wi; // x_basic(t) = x - t*delta
        int j = head_[p];
        double t = kInf;
        if (!phase2 && viol_sign_[p] != 0) {
            // infeasible basic: breakpoint where it regains its bound
            if (viol_sign_[p] > 0 && delta > 0)
                t = (xb_[p] - (ub_[j] - relax * (1.0 + std::abs(ub_[j])))) / delta;
            else if (viol_sign_[p] < 0 && delta < 0)
                t = (xb_[p] - (lb_[j] + relax * (1.0 + std::abs(lb_[j])))) / delta;
        } else {
            if (delta > 0 && std::isfinite(lb_[j]))
                t = (xb_[p] - (lb_[j] - relax * (1.0 + std::abs(lb_[j])))) / delta;
            else if (delta < 0 && std::isfinite(ub_[j]))
                t = (xb_[p] - (ub_[j] + relax * (1.0 + std::abs(ub_[j])))) / delta;
        }
        if (!std::isfinite(t)) return kInf;
        return t < 0 ? 0.0 : t;
    }

    // Returns 0 = pivot (p_leave/step set), 1 = bound flip (step set), 2 = unbounded.
    // Harris two-pass test: pass 1 finds the blocking step against slightly
    // relaxed bounds, pass 2 picks the largest pivot among true breakpoints
    // inside it. Bland mode falls back to the textbook lowest-index rule.
    int ratio_test(int q, int dir, bool phase2, bool bland, const std::vector<double>& w,
                   int& p_leave, double& step) const {
        const double sigma = static_cast<double>(dir);
        const double flip_t = (std::isfinite(lb_[q]) && std::isfinite(ub_[q]))
                                  ? ub_[q] - lb_[q]
                                  : kInf;
        p_leave = -1;

        if (bland) {
            double best_t = kInf;
            for (int p = 0; p < m_; ++p) {
                double t = breakpoint(p, sigma, phase2, w, 0.0);
                if (!std::isfinite(t)) continue;
                bool take = p_leave < 0 || t < best_t - 1e-12 ||
                            (t <= best_t + 1e-12 && head_[p] < head_[p_leave]);
                if (take) {
                    if (t < best_t) best_t = t;
                    p_leave = p;
                }
            }
            if (p_leave < 0 && !std::isfinite(flip_t)) return 2;
            if (flip_t <= best_t) {
                step = flip_t;
                return 1;
            }
            step = best_t;
            return 0;
        }

        const double relax = phase2 ? 1e-8 : 0.0; // exact steps in phase 1
        double t_relaxed = flip_t;
        for (int p = 0; p < m_; ++p)
            t_relaxed = std::min(t_relaxed, breakpoint(p, sigma, phase2, w, relax));
        if (!std::isfinite(t_relaxed)) return 2;

        double best_piv = 0.0;
        double best_t = kInf;
        for (int p = 0; p < m_; ++p) {
            double t = breakpoint(p, sigma, phase2, w, 0.0);
            if (t > t_relaxed) continue;
            if (std::abs(w[p]) > best_piv) {
                best_piv = std::abs(w[p]);
                best_t = t;
                p_leave = p;
            }
        }
        if (p_leave < 0 || flip_t <= best_t) {
            if (!std::isfinite(flip_t)) return 2;
            step = flip_t;
            return 1;
        }
        step = best_t;
        return 0;
    }

    void apply_flip(int q, int dir, double step, const std::vector<double>& w) {
        for (int p = 0; p < m_; ++p)
            if (w[p] != 0.0) xb_[p] -= dir * step * w[p];
        vstat_[q] = (dir > 0) ? VStat::AtUpper : VStat::AtLower;
    }

    void apply_pivot(int q, int dir, double step, int p_leave, const std::vector<double>& w) {
        int j_out = head_[p_leave];
        double x_enter = nonbasic_value(q) + dir * step;
        for (int p = 0; p < m_; ++p)
            if (w[p] != 0.0) xb_[p] -= dir * step * w[p];

        // leaving variable parks exactly on the bound it reached
        double delta = dir * w[p_leave];
        VStat out_stat;
        if (viol_sign_[p_leave] > 0 || (viol_sign_[p_leave] == 0 && delta < 0))
            out_stat = VStat::AtUpper;
        else
            out_stat = VStat::AtLower;
        if (out_stat == VStat::AtUpper && !std::isfinite(ub_[j_out]))
            out_stat = VStat::AtLower;
        if (out_stat == VStat::AtLower && !std::isfinite(lb_[j_out]))
            out_stat = VStat::AtUpper;
        vstat_[j_out] = out_stat;

        Eta e;
        e.p = p_leave;
        e.wp = w[p_leave];
        for (int p = 0; p < m_; ++p)
            if (p != p_leave && w[p] != 0.0) {
                e.idx.push_back(p);
                e.val.push_back(w[p]);
            }
        etas_.push_back(std::move(e));

        pos_of_col_[j_out] = -1;
        pos_of_col_[q] = p_leave;
        head_[p_leave] = q;
        vstat_[q] = VStat::Basic;
        xb_[p_leave] = x_enter;
    }

    Solution finish(SolveStatus status, long iters) {
        if (status == SolveStatus::Optimal) {
            // fresh factorization + recomputed values to shed eta drift
            if (!factorize())
                throw NumericalFailure("simplex: final refactorization failed");
            compute_xb();
        }
        Solution sol;
        sol.status = status;
        sol.iterations = iters;
        if (status != SolveStatus::Optimal) return sol;

        std::vector<double> x(N_);
        for (int j = 0; j < N_; ++j)
            x[j] = (vstat_[j] == VStat::Basic) ? 0.0 : nonbasic_value(j);
        for (int p = 0; p < m_; ++p) x[head_[p]] = xb_[p];

        std::vector<double> cb(m_), y(m_);
        for (int p = 0; p < m_; ++p) cb[p] = cost_at(head_[p]);
        btran(cb, y);

        sol.primal.resize(n_);
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) {
            sol.primal[j] = x[j] * cscale_[j];
            obj += lp_.objective()[j] * sol.primal[j];
        }
        sol.objective = obj;
        sol.duals.resize(m_);
        for (int i = 0; i < m_; ++i) sol.duals[i] = y[i] * rscale_[i];
        sol.reduced_costs.resize(n_);
        for (int j = 0; j < n_; ++j) {
            double d = reduced_cost(j, y, true);
            sol.reduced_costs[j] = d / cscale_[j];
        }
        sol.basis.statuses.resize(N_);
        for (int j = 0; j < N_; ++j) sol.basis.statuses[j] = static_cast<char>(vstat_[j]);

        certify(sol);
        return sol;
    }

    void certify(const Solution& sol) const {
        double bnorm = 0.0;
        for (double v : lp_.rhs()) bnorm = std::max(bnorm, std::abs(v));
        double resid = primal_infeasibility(lp_, sol.primal);
        if (resid > o_.certify_rel * (1.0 + bnorm))
            throw NumericalFailure("simplex: certification failed (primal residual " +
                                   std::to_string(resid) + ")");
        double gap = duality_gap(lp_, sol);
        if (gap > o_.certify_rel * (1.0 + std::abs(sol.objective)))
            throw NumericalFailure("simplex: certification failed (duality gap " +
                                   std::to_string(gap) + ")");
    }
};

} // namespace

Solution solve_lp(const LinearProgram& lp, const SimplexOptions& opts, const BasisHint& warm) {
    if (lp.num_vars() == 0)
        throw DomainError("solve_lp: program has no variables");
    Simplex s(lp, opts);
    return s.run(warm);
}

} // namespace rplan
