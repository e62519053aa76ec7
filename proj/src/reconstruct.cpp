#include "minusorder/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "minusorder/conic.hpp"
#include "minusorder/matrix_io.hpp"
#include "minusorder/rng.hpp"

namespace minusorder {

namespace {

constexpr std::uint64_t kLatticeLineSeed = 0x9D2C5680u;
constexpr std::uint64_t kRecoverySeed = 0x5F2A1CEDu;
constexpr double kProjectorTol = 1e-8;
constexpr double kPipelineTol = 1e-7;

std::vector<double> basis_vector(std::size_t n, std::size_t i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    return e;
}

PsdMatrix line_projector(const std::vector<double>& x, const TolerancePolicy& policy) {
    const double len = norm2(x);
    return PsdMatrix(DenseMatrix::outer(scaled(x, 1.0 / len), scaled(x, 1.0 / len)), policy);
}

/// Top eigenpair of a PSD matrix, as (sqrt(lambda) * v, lambda).
std::pair<std::vector<double>, double> top_component(const PsdMatrix& m) {
    const double lambda = m.eigenvalues().empty() ? 0.0 : m.eigenvalues()[0];
    return {m.eigenvectors().col(0), lambda};
}

}  // namespace

PsdMap congruence_map(const DenseMatrix& s, const TolerancePolicy& policy) {
    policy.validate();
    if (!s.is_square()) throw ShapeMismatch("congruence_map");
    if (rank(s, policy) != s.rows()) throw SingularTransform("congruence_map");
    const std::size_t n = s.rows();
    return PsdMap{n, [s, policy](const PsdMatrix& a) {
                      return PsdMatrix((s * a.mat() * s.transpose()).symmetrized(), policy);
                  }};
}

PsdMap identity_map(std::size_t n, const TolerancePolicy& policy) {
    (void)policy;
    return PsdMap{n, [](const PsdMatrix& a) { return a; }};
}

FaultKind fault_from_string(const std::string& name) {
    if (name == "projector") return FaultKind::Projector;
    if (name == "rank") return FaultKind::Rank;
    if (name == "zero") return FaultKind::Zero;
    if (name == "none" || name.empty()) return FaultKind::None;
    throw DomainError("unknown fault kind: " + name);
}

PsdMap congruence_map_with_fault(const DenseMatrix& s, FaultKind kind,
                                 const TolerancePolicy& policy) {
    PsdMap base = congruence_map(s, policy);
    const std::size_t n = s.rows();
    switch (kind) {
        case FaultKind::None:
            return base;
        case FaultKind::Zero:
            // Shifted map: no longer sends 0 to 0.
            return PsdMap{n, [base, n, policy](const PsdMatrix& a) {
                              return PsdMatrix(base(a).mat() + DenseMatrix::unit(n, 0, 0),
                                               policy);
                          }};
        case FaultKind::Rank:
            // Truncates the input to the projector onto the first image
            // direction before mapping: drops every rank above one.
            return PsdMap{n, [base, n, policy](const PsdMatrix& a) {
                              if (a.certified_rank() == 0) return base(a);
                              const std::vector<double> v = a.eigenvectors().col(0);
                              return base(PsdMatrix(DenseMatrix::outer(v, v), policy));
                          }};
        case FaultKind::Projector:
            // Perturbs the image of one canonical projector (E_11) by 1e-3.
            return PsdMap{n, [base, n, policy](const PsdMatrix& a) {
                              const DenseMatrix e11 = DenseMatrix::unit(n, 0, 0);
                              if ((a.mat() - e11).max_abs() < 1e-12) {
                                  return PsdMatrix(
                                      base(a).mat() + DenseMatrix::unit(n, 1, 1) * 1e-3,
                                      policy);
                              }
                              return base(a);
                          }};
    }
    throw DomainError("congruence_map_with_fault");
}

nlohmann::ordered_json to_json(const MonotonicityReport& r) {
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) {
        violations.push_back(nlohmann::ordered_json{{"a", matrix_to_json(v.a)},
                                                    {"b", matrix_to_json(v.b)},
                                                    {"direction", v.direction}});
    }
    return nlohmann::ordered_json{{"trials", r.trials},
                                  {"verdict", r.verdict},
                                  {"seed", r.seed},
                                  {"violations", std::move(violations)}};
}

MonotonicityReport test_bimonotone(const PsdMap& map, std::size_t trials, std::size_t n,
                                   std::uint64_t seed, const TolerancePolicy& policy) {
    MonotonicityReport report;
    report.trials = trials;
    report.seed = seed;

    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        DenseMatrix a_raw(n, n), b_raw(n, n);

        if (trial % 2 == 0) {
            // Comparable pair through a common congruence of the E_k chain.
            const DenseMatrix s = random_invertible(rng, n);
            std::size_t i = rng.uniform_index(n + 1);
            std::size_t j = rng.uniform_index(n + 1);
            if (i > j) std::swap(i, j);
            a_raw = congruence(s, DenseMatrix::leading_projector(n, i), policy);
            b_raw = congruence(s, DenseMatrix::leading_projector(n, j), policy);
        } else {
            // Incomparable pair by rejection, bounded, with a constructed
            // fallback (two rank-one projectors onto distinct, non-orthogonal
            // lines are never comparable).
            bool found = false;
            for (int attempt = 0; attempt < 100 && !found; ++attempt) {
                const std::size_t ka = 1 + rng.uniform_index(n);
                const std::size_t kb = 1 + rng.uniform_index(n);
                const DenseMatrix a_cand = random_psd_matrix(rng, n, ka);
                const DenseMatrix b_cand = random_psd_matrix(rng, n, kb);
                if (!minus_leq_rank(a_cand, b_cand, policy) &&
                    !minus_leq_rank(b_cand, a_cand, policy)) {
                    a_raw = a_cand;
                    b_raw = b_cand;
                    found = true;
                }
            }
            if (!found) {
                std::vector<double> x = basis_vector(n, 0);
                std::vector<double> y = basis_vector(n, 0);
                y[1] = 1.0;
                a_raw = DenseMatrix::outer(x, x) * 2.0;
                b_raw = DenseMatrix::outer(y, y) * 1.5;
            }
        }

        const PsdMatrix a(a_raw, policy);
        const PsdMatrix b(b_raw, policy);
        const PsdMatrix fa = map(a);
        const PsdMatrix fb = map(b);

        const bool ab = minus_leq_rank(a.mat(), b.mat(), policy);
        const bool fab = minus_leq_rank(fa.mat(), fb.mat(), policy);
        if (ab != fab)
            report.violations.push_back(
                {a.mat(), b.mat(), ab ? "A<=B but not Phi(A)<=Phi(B)"
                                      : "Phi(A)<=Phi(B) but not A<=B"});
        const bool ba = minus_leq_rank(b.mat(), a.mat(), policy);
        const bool fba = minus_leq_rank(fb.mat(), fa.mat(), policy);
        if (ba != fba)
            report.violations.push_back(
                {b.mat(), a.mat(), ba ? "B<=A but not Phi(B)<=Phi(A)"
                                      : "Phi(B)<=Phi(A) but not B<=A"});
    }

    report.verdict = report.violations.empty();
    return report;
}

bool check_fixes_zero(const PsdMap& map, const TolerancePolicy& policy) {
    const PsdMatrix zero(DenseMatrix(map.n, map.n), policy);
    return map(zero).mat().max_abs() < policy.sym_abs_tol;
}

bool check_rank_preserving(const PsdMap& map, std::size_t trials, std::size_t n,
                           std::uint64_t seed, const TolerancePolicy& policy) {
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        for (std::size_t k = 0; k <= n; ++k) {
            const PsdMatrix a = random_psd(rng, n, k, policy);
            if (a.certified_rank() != k) continue;  // degenerate draw, skip
            if (map(a).certified_rank() != k) return false;
        }
    }
    return true;
}

PsdMap normalize_at_identity(const PsdMap& map, const TolerancePolicy& policy) {
    const PsdMatrix identity(DenseMatrix::identity(map.n), policy);
    const PsdMatrix b = map(identity);
    for (double lambda : b.eigenvalues())
        if (lambda <= policy.psd_eig_tol)
            throw IdentityImageSingular("map(I) is not positive definite");
    const DenseMatrix whitener = inv_sqrt_pd(b);
    const PsdMap inner = map;
    return PsdMap{map.n, [inner, whitener, policy](const PsdMatrix& a) {
                      return PsdMatrix((whitener * inner(a).mat() * whitener).symmetrized(),
                                       policy);
                  }};
}

bool check_projector_lattice(const PsdMap& map, std::size_t n,
                             const TolerancePolicy& policy) {
    const PsdMatrix identity(DenseMatrix::identity(n), policy);
    if ((map(identity).mat() - DenseMatrix::identity(n)).max_abs() > kProjectorTol)
        throw NotNormalized("check_projector_lattice requires map(I) = I");

    // Canonical family: the E_k chain, coordinate lines, diagonal lines,
    // and a seeded batch of random lines.
    std::vector<PsdMatrix> family;
    for (std::size_t k = 1; k <= n; ++k)
        family.emplace_back(DenseMatrix::leading_projector(n, k), policy);
    for (std::size_t i = 0; i < n; ++i)
        family.push_back(line_projector(basis_vector(n, i), policy));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<double> plus = basis_vector(n, i);
            plus[j] = 1.0;
            std::vector<double> minus = basis_vector(n, i);
            minus[j] = -1.0;
            family.push_back(line_projector(plus, policy));
            family.push_back(line_projector(minus, policy));
        }
    Rng rng(kLatticeLineSeed);
    for (int k = 0; k < 20; ++k)
        family.push_back(line_projector(random_unit_vector(rng, n), policy));

    std::vector<DenseMatrix> images;
    images.reserve(family.size());
    for (const auto& p : family) {
        const DenseMatrix m = map(p).mat();
        if (!m.is_symmetric(kProjectorTol)) return false;
        if ((m * m - m).frobenius_norm() > kProjectorTol * (1.0 + m.frobenius_norm()))
            return false;
        images.push_back(m);
    }

    // Containment must transfer as an iff. For orthogonal projectors
    // Im P inside Im Q reads Q P = P.
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (i == j) continue;
            const DenseMatrix& p = family[i].mat();
            const DenseMatrix& q = family[j].mat();
            const bool contained = (q * p - p).frobenius_norm() < 1e-9 * (1.0 + p.frobenius_norm());
            const bool image_contained =
                (images[j] * images[i] - images[i]).frobenius_norm() <
                kPipelineTol * (1.0 + images[i].frobenius_norm());
            if (contained != image_contained) return false;
        }
    }
    return true;
}

DenseMatrix recover_linear_map_on_lines(const PsdMap& map, std::size_t n,
                                        const TolerancePolicy& policy) {
    // Column directions from the images of the coordinate-line projectors.
    std::vector<std::vector<double>> dirs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PsdMatrix m = map(line_projector(basis_vector(n, i), policy));
        const auto [v, lambda] = top_component(m);
        if ((m.mat() - DenseMatrix::outer(v, v) * lambda).frobenius_norm() >
            kPipelineTol * (1.0 + m.mat().frobenius_norm()))
            throw InconsistentLineImages("image of a coordinate line is not a rank-one projector");
        dirs[i] = v;
    }

    // Relative scales from the images of span(e_1 + e_i): the image line
    // must be a combination of the first and i-th column directions.
    DenseMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) t(i, 0) = dirs[0][i];
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<double> diag_line = basis_vector(n, 0);
        diag_line[i] = 1.0;
        const PsdMatrix m = map(line_projector(diag_line, policy));
        const auto [w, lambda] = top_component(m);
        (void)lambda;
        DenseMatrix basis(n, 2);
        for (std::size_t row = 0; row < n; ++row) {
            basis(row, 0) = dirs[0][row];
            basis(row, 1) = dirs[i][row];
        }
        const DenseMatrix coeff = least_squares(basis, DenseMatrix::column_vector(w), policy);
        const DenseMatrix res = basis * coeff - DenseMatrix::column_vector(w);
        if (res.frobenius_norm() > kPipelineTol)
            throw InconsistentLineImages("diagonal-line image escapes the column plane");
        if (std::abs(coeff(0, 0)) < 1e-9)
            throw InconsistentLineImages("no consistent scaling for column " +
                                         std::to_string(i));
        const double scale = coeff(1, 0) / coeff(0, 0);
        for (std::size_t row = 0; row < n; ++row) t(row, i) = scale * dirs[i][row];
    }

    // The result must reproduce the map on every tested rank-one projector.
    auto check_line = [&](const std::vector<double>& x) {
        const std::vector<double> tx = t.apply(x);
        const double len = norm2(tx);
        if (len < 1e-12) throw InconsistentLineImages("recovered map annihilates a line");
        const DenseMatrix expected = DenseMatrix::outer(scaled(tx, 1.0 / len),
                                                        scaled(tx, 1.0 / len));
        const DenseMatrix actual = map(line_projector(x, policy)).mat();
        if ((actual - expected).frobenius_norm() > kPipelineTol)
            throw InconsistentLineImages("recovered line map fails to reproduce the map");
    };
    for (std::size_t i = 0; i < n; ++i) check_line(basis_vector(n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<double> plus = basis_vector(n, i);
            plus[j] = 1.0;
            check_line(plus);
            plus[j] = -1.0;
            check_line(plus);
        }
    Rng rng(kLatticeLineSeed + 1);
    for (int k = 0; k < 50; ++k) check_line(random_unit_vector(rng, n));

    return t;
}

DenseMatrix recover_congruence(const PsdMap& map, std::size_t n,
                               const TolerancePolicy& policy) {
    // Columns up to sign from map(E_ii) = (S e_i)(S e_i)^T.
    std::vector<std::vector<double>> cols(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PsdMatrix m = map(PsdMatrix(DenseMatrix::unit(n, i, i), policy));
        const auto [v, lambda] = top_component(m);
        const std::vector<double> c = scaled(v, std::sqrt(std::max(lambda, 0.0)));
        if ((m.mat() - DenseMatrix::outer(c, c)).frobenius_norm() >
            kPipelineTol * (1.0 + m.mat().frobenius_norm()))
            throw NotCongruenceInduced("image of E_ii is not rank one");
        cols[i] = c;
    }

    // Relative signs from map((e_1 + e_i)(e_1 + e_i)^T).
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<double> d = basis_vector(n, 0);
        d[i] = 1.0;
        const DenseMatrix m = map(PsdMatrix(DenseMatrix::outer(d, d), policy)).mat();
        const DenseMatrix plus = DenseMatrix::outer(add(cols[0], cols[i]),
                                                    add(cols[0], cols[i]));
        const DenseMatrix minus = DenseMatrix::outer(sub(cols[0], cols[i]),
                                                     sub(cols[0], cols[i]));
        const double r_plus = (m - plus).frobenius_norm();
        const double r_minus = (m - minus).frobenius_norm();
        const double best = std::min(r_plus, r_minus);
        const double worst = std::max(r_plus, r_minus);
        if (best > 1e-6 * (1.0 + m.frobenius_norm()))
            throw NotCongruenceInduced("no sign assignment matches the diagonal-line image");
        if (worst < 10.0 * best + 1e-12)
            throw SignResolutionFailure("cross terms too small to resolve a sign");
        if (r_minus < r_plus) cols[i] = scaled(cols[i], -1.0);
    }

    DenseMatrix s(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) s(i, j) = cols[j][i];

    // Canonical global sign: first nonzero entry of the first column positive.
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(s(i, 0)) > 1e-12) {
            if (s(i, 0) < 0.0) s = s * -1.0;
            break;
        }
    }

    // A posteriori verification of the congruence form on random PSD inputs.
    Rng rng(kRecoverySeed);
    for (int check = 0; check < 100; ++check) {
        const PsdMatrix a = random_psd(rng, n, 1 + rng.uniform_index(n), policy);
        const DenseMatrix expected = (s * a.mat() * s.transpose()).symmetrized();
        const double gap = (map(a).mat() - expected).frobenius_norm();
        if (gap > kPipelineTol * (1.0 + a.mat().frobenius_norm()))
            throw NotCongruenceInduced("verification failed on a random PSD input");
    }
    return s;
}

nlohmann::ordered_json to_json(const RigidityReport& r) {
    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    for (const auto& st : r.stages) {
        stages.push_back(nlohmann::ordered_json{{"stage", st.stage},
                                                {"verdict", st.pass},
                                                {"max_residual", st.max_residual},
                                                {"note", st.note}});
    }
    return nlohmann::ordered_json{{"n", r.n},
                                  {"trials", r.trials},
                                  {"seed", r.seed},
                                  {"verdict", r.pass},
                                  {"failed_stage", r.failed_stage},
                                  {"failed_trials", r.failed_trials},
                                  {"stages", std::move(stages)}};
}

RigidityReport rigidity_suite(std::size_t n, std::size_t trials, std::uint64_t seed,
                              const TolerancePolicy& policy, FaultKind fault) {
    if (n < 3) throw DomainError("rigidity_suite requires n >= 3");
    RigidityReport report;
    report.n = n;
    report.trials = trials;
    report.seed = seed;

    const std::vector<std::string> stage_names = {
        "fixes_zero",     "rank_preserving", "normalize_at_identity",
        "projector_lattice", "line_recovery", "svd_reduction",
        "identity_regime", "recover_congruence"};
    report.stages.reserve(stage_names.size());
    for (const auto& name : stage_names) report.stages.push_back({name, true, 0.0, ""});

    auto stage_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < stage_names.size(); ++i)
            if (stage_names[i] == name) return i;
        return stage_names.size();
    };
    auto fail_stage = [&](const std::string& name, const std::string& note) {
        auto& st = report.stages[stage_index(name)];
        st.pass = false;
        if (st.note.empty()) st.note = note;
        if (report.failed_stage.empty()) report.failed_stage = name;
        ++report.failed_trials;
    };
    auto bump = [&](const std::string& name, double residual) {
        auto& st = report.stages[stage_index(name)];
        st.max_residual = std::max(st.max_residual, residual);
    };

    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const DenseMatrix s = random_invertible(rng, n);
        const PsdMap map = congruence_map_with_fault(s, fault, policy);
        const std::uint64_t trial_seed = Rng::substream(seed, trial).next_u64();

        try {
            // Proof-order pipeline; any stage failure is labeled and aborts
            // the trial.
            const PsdMatrix zero(DenseMatrix(n, n), policy);
            bump("fixes_zero", map(zero).mat().max_abs());
            if (!check_fixes_zero(map, policy)) {
                fail_stage("fixes_zero", "map(0) != 0");
                continue;
            }

            if (!check_rank_preserving(map, 3, n, trial_seed, policy)) {
                fail_stage("rank_preserving", "rank changed on a sample");
                continue;
            }

            PsdMap normalized = normalize_at_identity(map, policy);
            const PsdMatrix identity(DenseMatrix::identity(n), policy);
            const double id_gap =
                (normalized(identity).mat() - DenseMatrix::identity(n)).max_abs();
            bump("normalize_at_identity", id_gap);
            if (id_gap > 1e-8) {
                fail_stage("normalize_at_identity", "normalized map misses the identity");
                continue;
            }

            if (!check_projector_lattice(normalized, n, policy)) {
                fail_stage("projector_lattice", "projector family or containment iff broke");
                continue;
            }

            const DenseMatrix t = recover_linear_map_on_lines(normalized, n, policy);

            // SVD reduction: conjugate by the orthogonal factors so the
            // induced line map becomes diagonal with extreme singular values
            // leading; the reduced map must fix every E_ii.
            Svd f = svd(t);
            // Reorder so sigma_1 is the max and sigma_2 the min.
            {
                const std::size_t last = n - 1;
                auto swap_cols = [&](DenseMatrix& m, std::size_t a, std::size_t b) {
                    for (std::size_t row = 0; row < m.rows(); ++row)
                        std::swap(m(row, a), m(row, b));
                };
                if (last >= 1) {
                    std::swap(f.sigma[1], f.sigma[last]);
                    swap_cols(f.u, 1, last);
                    swap_cols(f.v, 1, last);
                }
            }
            const DenseMatrix u = f.u;
            const DenseMatrix v = f.v;
            auto reduced = [&](const PsdMatrix& x) {
                const PsdMatrix conj((v * x.mat() * v.transpose()).symmetrized(), policy);
                return PsdMatrix(
                    (u.transpose() * normalized(conj).mat() * u).symmetrized(), policy);
            };
            double reduction_gap = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const PsdMatrix eii(DenseMatrix::unit(n, i, i), policy);
                reduction_gap = std::max(
                    reduction_gap, (reduced(eii).mat() - DenseMatrix::unit(n, i, i)).max_abs());
            }
            bump("svd_reduction", reduction_gap);
            if (reduction_gap > 1e-8) {
                fail_stage("svd_reduction", "reduced map does not fix the E_ii");
                continue;
            }

            // Identity regime: the reduced map must fix the rank-one
            // matrices below I_2 (+) 0, matching the rigid planar map
            // phi_hat(a0 = 4, gamma = 1).
            double regime_gap = 0.0;
            for (int sample = 0; sample < 32; ++sample) {
                const double theta = 0.01 + sample * 0.19634954084936207;  // 2 pi / 32
                const Vec2 point{std::cos(theta), std::sin(theta)};
                const Vec2 fixed = phi_hat(4.0, 1.0, point);
                std::vector<double> x(n, 0.0), y(n, 0.0);
                x[0] = point.x;
                x[1] = point.y;
                y[0] = fixed.x;
                y[1] = fixed.y;
                const PsdMatrix rank_one(DenseMatrix::outer(x, x), policy);
                regime_gap = std::max(
                    regime_gap,
                    (reduced(rank_one).mat() - DenseMatrix::outer(y, y)).frobenius_norm());
            }
            bump("identity_regime", regime_gap);
            if (regime_gap > kPipelineTol) {
                fail_stage("identity_regime", "reduced map moves a rank-one below I_2 + 0");
                continue;
            }

            const DenseMatrix recovered = recover_congruence(map, n, policy);
            const double direct = (recovered - s).max_abs();
            const double flipped = (recovered + s).max_abs();
            const double recovery_gap = std::min(direct, flipped);
            bump("recover_congruence", recovery_gap);
            if (recovery_gap > kPipelineTol) {
                fail_stage("recover_congruence", "recovered S differs from the sampled S");
                continue;
            }
        } catch (const Error& e) {
            // Attribute the exception to the stage that raised it.
            const std::string what = e.what();
            std::string label = "recover_congruence";
            if (what.find("IdentityImageSingular") != std::string::npos)
                label = "normalize_at_identity";
            else if (what.find("NotNormalized") != std::string::npos)
                label = "projector_lattice";
            else if (what.find("InconsistentLineImages") != std::string::npos)
                label = "line_recovery";
            else if (what.find("NotCongruenceInduced") != std::string::npos ||
                     what.find("SignResolutionFailure") != std::string::npos)
                label = "recover_congruence";
            else if (what.find("NotPositiveSemidefinite") != std::string::npos)
                label = "normalize_at_identity";
            fail_stage(label, what);
            continue;
        }
    }

    report.pass = report.failed_trials == 0;
    return report;
}

}  // namespace minusorder
