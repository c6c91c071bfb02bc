#include <doctest.h>

#include "multiboson/errors.hpp"
#include "multiboson/evolution.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

using namespace multiboson;
using namespace multiboson::evolution;
using cplx = std::complex<double>;

namespace {

const std::vector<PresetName> kPresets{PresetName::HI, PresetName::HII, PresetName::HIII, PresetName::HIV};

// Dense oracle e^{−iH₀t} e^{−iH_int t} ψ₀ with H₀ = ω₀n₀ + ω₁n₁.
Eigen::VectorXcd dense_oracle(const FullModel& m, const Eigen::VectorXcd& psi0, double t)
{
    const Eigen::MatrixXd H = Eigen::MatrixXd(interaction_matrix(m));
    const Eigen::MatrixXcd U = (cplx(0.0, -t) * H.cast<cplx>()).exp();
    Eigen::VectorXcd out = U * psi0;
    const Eigen::Index N = m.N;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const double e = m.modes() == 2 ? m.omega0 * static_cast<double>(i / N) + m.omega1 * static_cast<double>(i % N)
                                        : m.omega0 * static_cast<double>(i);
        out(i) *= std::polar(1.0, -e * t);
    }
    return out;
}

FullModel reporting(FullModel m)
{
    m.tail_policy = TailPolicy::Report;
    return m;
}

} // namespace

TEST_SUITE("evolution")
{
    TEST_CASE("preset matrices equal their framework mappings")
    {
        for (PresetName p : kPresets) {
            const Preset pr = preset(p, 40);
            const Eigen::MatrixXd ladder = Eigen::MatrixXd(pr.matrix);
            const Eigen::MatrixXd framework = Eigen::MatrixXd(interaction_matrix(preset_model(p, 40)));
            CHECK((ladder - framework).cwiseAbs().maxCoeff() <= 1e-12 * ladder.cwiseAbs().maxCoeff());
            CHECK(!pr.mapping_note.empty());
        }
        CHECK_THROWS_AS(preset(PresetName::HI, 2), DomainError);
    }

    TEST_CASE("preset names round-trip")
    {
        for (PresetName p : kPresets)
            CHECK(parse_preset(to_string(p)) == p);
        CHECK_THROWS_AS(parse_preset("H_V"), DomainError);
    }

    TEST_CASE("preset structure")
    {
        const int N = 12;
        const Eigen::MatrixXd h2 = Eigen::MatrixXd(preset(PresetName::HII, N).matrix);
        CHECK(h2 == h2.transpose());
        const SparseMatrix h1 = preset(PresetName::HI, N).matrix;
        for (int k = 0; k < h1.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(h1, k); it; ++it) {
                const int r0 = static_cast<int>(it.row()) / N, r1 = static_cast<int>(it.row()) % N;
                const int c0 = static_cast<int>(it.col()) / N, c1 = static_cast<int>(it.col()) % N;
                const bool diagonal = r0 == c0 && r1 == c1;
                const bool pair = std::abs(r0 - c0) == 2 && (r0 - c0) == (r1 - c1);
                CHECK((diagonal || pair));
            }
    }

    TEST_CASE("observables")
    {
        const int N = 10;
        const Observables f = observables(fock_state(N, 2, 3), 2);
        CHECK(f.mean0 == doctest::Approx(2.0));
        CHECK(f.mean1 == doctest::Approx(3.0));
        CHECK(f.var0 == doctest::Approx(0.0));
        CHECK(f.fano1 == doctest::Approx(0.0));
        const Observables vac = observables(fock_state(N, 0, 0), 2);
        CHECK(std::isnan(vac.fano0));

        // Amplitudes ζ^k/k! on l = 1, α₀ = 1: moments from the weights |ζ|^{2k}/(k!)².
        const rep::MultibosonRep single(1, {1.0});
        const cplx z(1.1, 0.4);
        const StateVector coh = product_state(coherent_profile(single, 0, z, 40), coherent_profile(single, 0, 0.0, 40));
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, w = 1.0;
        for (int k = 0; k < 40; ++k) {
            s0 += w;
            s1 += k * w;
            s2 += k * k * w;
            w *= std::norm(z) / ((k + 1.0) * (k + 1.0));
        }
        const double mean = s1 / s0, var = s2 / s0 - mean * mean;
        const Observables c = observables(coh, 2);
        CHECK(c.mean0 == doctest::Approx(mean).epsilon(1e-12));
        CHECK(c.var0 == doctest::Approx(var).epsilon(1e-10));
        CHECK(c.fano0 == doctest::Approx(var / mean).epsilon(1e-10));
        CHECK(c.fano0 < 1.0);
        CHECK(c.mean1 == 0.0);
    }

    TEST_CASE("evolution against a dense oracle")
    {
        const int N = 9;
        const Eigen::VectorXcd psi0 = product_state(coherent_profile(rep::MultibosonRep(1, {1.0}), 0, 0.5, N),
                                                    coherent_profile(rep::MultibosonRep(1, {1.0}), 0, cplx(0.0, 0.4), N))
                                          .amplitudes;
        std::vector<FullModel> models;
        for (PresetName p : kPresets)
            models.push_back(reporting(preset_model(p, N, 1.0, 0.7)));
        FullModel general;
        general.N = N;
        general.omega0 = 0.3;
        general.omega1 = 1.1;
        general.interaction = TwoModeInteraction{{rep::MultibosonRep(1, {1.0}), rep::MultibosonRep(2, {0.5, 1.5})},
                                                 {2.0, 1}, {0.5, -1}, 0.3, 0.2};
        models.push_back(reporting(general));
        FullModel one;
        one.N = 30;
        one.omega0 = 0.5;
        one.interaction = OneModeInteraction{rep::MultibosonRep(2, {0.5, 1.5}), 0.8, 0.3};
        models.push_back(reporting(one));

        for (const FullModel& m : models) {
            Eigen::VectorXcd start = m.modes() == 2 ? psi0 : coherent_profile(rep::MultibosonRep(1, {1.0}), 0, 0.6, m.N);
            StateVector s{start, m.modes() == 2 ? "fock2" : "fock"};
            for (double t : {0.0, 0.35, 1.2}) {
                const StateVector out = evolve_full(m, s, t);
                CHECK((out.amplitudes - dense_oracle(m, start, t)).cwiseAbs().maxCoeff() <= 1e-9);
                CHECK(std::abs(out.norm() - 1.0) <= 1e-10);
            }
            CHECK((evolve_full(m, s, 0.0).amplitudes - start).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }

    TEST_CASE("time reversal and free-part independence of occupation means")
    {
        const int N = 24;
        const FullModel m = preset_model(PresetName::HII, N, 1.3, 0.6);
        const StateVector s = fock_state(N, 3, 2);
        const StateVector fwd = evolve_full(m, s, 0.8);
        const StateVector back = evolve_full(m, evolve_full(m, s, 0.8, false), -0.8, false);
        CHECK((back.amplitudes - s.amplitudes).cwiseAbs().maxCoeff() <= 1e-10);
        const Observables with = observables(fwd, 2);
        const Observables without = observables(evolve_full(m, s, 0.8, false), 2);
        CHECK(with.mean0 == doctest::Approx(without.mean0).epsilon(1e-12));
        CHECK(with.var1 == doctest::Approx(without.var1).epsilon(1e-12));
    }

    TEST_CASE("block non-leakage")
    {
        const int N = 20;
        const FullModel m = preset_model(PresetName::HII, N);
        const StateVector out = evolve_full(m, fock_state(N, 4, 2), 2.5);
        for (int n0 = 0; n0 < N; ++n0)
            for (int n1 = 0; n1 < N; ++n1)
                if (n0 + n1 != 6 || n0 % 2 != 0)
                    CHECK(std::abs(out.amplitudes(static_cast<Eigen::Index>(n0) * N + n1)) <= 1e-14);
    }

    TEST_CASE("Manley-Rowe invariant and energy along a series")
    {
        const int N = 40;
        const FullModel m = reporting(preset_model(PresetName::HIV, N));
        const StateVector s = fock_state(N, 2, 3);
        std::vector<double> times;
        for (int i = 0; i <= 20; ++i)
            times.push_back(0.5 * i);
        const ObservableSeries series = run_series(m, s, times);
        REQUIRE(series.records.size() == times.size());
        const double d0 = series.records[0].obs.mean0 - series.records[0].obs.mean1;
        const double e0 = series.records[0].energy;
        for (const SeriesRecord& r : series.records) {
            CHECK(std::abs(r.obs.mean0 - r.obs.mean1 - d0) <= 1e-8);
            CHECK(std::abs(r.norm - 1.0) <= 1e-10);
            CHECK(std::abs(r.energy - e0) <= 1e-8 * (1.0 + std::abs(e0)));
        }
        CHECK(series.max_tail > 0.0);
    }

    TEST_CASE("tail enforcement")
    {
        const int N = 20;
        const FullModel m = preset_model(PresetName::HIV, N);
        CHECK_THROWS_AS(evolve_full(m, fock_state(N, 2, 3), 10.0), TruncationOverflow);
        CHECK_THROWS_AS(evolve_full(m, fock_state(N, 19, 0), 0.0), TruncationOverflow);
        CHECK_NOTHROW(evolve_full(reporting(m), fock_state(N, 2, 3), 10.0));
        CHECK_THROWS_AS(fock_state(N, N, 0), DomainError);
    }
}
