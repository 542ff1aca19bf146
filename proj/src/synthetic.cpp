#include "rfqsrr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rfqsrr/errors.hpp"
#include "rfqsrr/rng.hpp"

namespace rfq {

namespace {

constexpr double kSineCoefficient = 1.5;
constexpr double kSineFrequency = 2.5;

std::string padded(std::size_t v) {
    std::string s = std::to_string(v);
    while (s.size() < 4) s.insert(s.begin(), '0');
    return s;
}

// Var(c * sin(f * X)) for X ~ N(0,1): the mean is zero by symmetry and
// E[sin^2(fX)] = (1 - exp(-2 f^2)) / 2.
double sine_variance(double coefficient, double frequency) {
    return coefficient * coefficient * (1.0 - std::exp(-2.0 * frequency * frequency)) / 2.0;
}

}  // namespace

SyntheticDataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.p == 0) throw std::invalid_argument("generate_synthetic: p must be >= 1");
    if (spec.n == 0) throw std::invalid_argument("generate_synthetic: n must be >= 1");
    if (spec.k_linear + spec.k_nonlinear > spec.p) {
        throw std::invalid_argument(
            "generate_synthetic: k_linear + k_nonlinear = " +
            std::to_string(spec.k_linear + spec.k_nonlinear) + " exceeds p = " +
            std::to_string(spec.p));
    }
    if (spec.noise_sd < 0.0) {
        throw std::invalid_argument("generate_synthetic: noise_sd must be >= 0");
    }
    if (spec.correlation_rho < 0.0 || spec.correlation_rho >= 1.0) {
        throw std::invalid_argument("generate_synthetic: correlation_rho must lie in [0, 1)");
    }

    const std::size_t n = spec.n;
    const std::size_t p = spec.p;
    const std::size_t k_rel = spec.k_linear + spec.k_nonlinear;
    const std::size_t n_copies =
        spec.correlation_rho > 0.0 ? std::min(k_rel, p - k_rel) : 0;

    // Logical layout: [0, k_linear) linear, [k_linear, k_rel) nonlinear,
    // [k_rel, k_rel + n_copies) correlated decoys, rest independent noise.
    // Final column positions are a seeded permutation of the logical ones.
    std::vector<double> values(p * n);
    std::vector<std::string> names(p);

    Rng perm_rng(derive_seed(spec.seed, 0));
    const std::vector<std::size_t> position = random_permutation(p, perm_rng);

    auto col = [&](std::size_t logical) {
        return values.data() + position[logical] * n;
    };

    for (std::size_t j = 0; j < p; ++j) {
        Rng rng(derive_seed(spec.seed, 2 + j));
        double* out = col(j);
        if (j >= k_rel && j < k_rel + n_copies) {
            // rho * source + sqrt(1 - rho^2) * fresh keeps unit variance.
            const double rho = spec.correlation_rho;
            const double mix = std::sqrt(1.0 - rho * rho);
            const double* src = col(j - k_rel);
            for (std::size_t i = 0; i < n; ++i) out[i] = rho * src[i] + mix * rng.normal();
        } else {
            for (std::size_t i = 0; i < n; ++i) out[i] = rng.normal();
        }
    }

    SyntheticMeta meta;
    for (std::size_t j = 0; j < spec.k_linear; ++j) {
        GenerativeTerm t;
        t.kind = GenerativeTerm::Kind::Linear;
        t.feature_a = position[j];
        t.coefficient = 1.0;
        meta.terms.push_back(t);
        names[position[j]] = "REL_L" + padded(j);
    }
    // Nonlinear features alternate between a bounded sine transform and an
    // alternating-sign pair product, so both forms appear once k >= 3.
    {
        std::size_t i = 0;
        bool next_sine = true;
        std::size_t product_count = 0;
        while (i < spec.k_nonlinear) {
            const std::size_t fa = spec.k_linear + i;
            if (next_sine || spec.k_nonlinear - i < 2) {
                GenerativeTerm t;
                t.kind = GenerativeTerm::Kind::Sine;
                t.feature_a = position[fa];
                t.coefficient = kSineCoefficient;
                t.frequency = kSineFrequency;
                meta.terms.push_back(t);
                i += 1;
            } else {
                const std::size_t fb = fa + 1;
                GenerativeTerm t;
                t.kind = GenerativeTerm::Kind::Product;
                t.feature_a = position[fa];
                t.feature_b = position[fb];
                t.coefficient = (product_count % 2 == 0) ? 1.0 : -1.0;
                ++product_count;
                meta.terms.push_back(t);
                i += 2;
            }
            next_sine = !next_sine;
        }
    }
    for (std::size_t j = spec.k_linear; j < k_rel; ++j) {
        names[position[j]] = "REL_N" + padded(j - spec.k_linear);
    }
    for (std::size_t j = k_rel; j < k_rel + n_copies; ++j) {
        names[position[j]] = "IRR_C" + padded(j - k_rel);
        meta.correlated_copies.emplace_back(position[j], position[j - k_rel]);
    }
    for (std::size_t j = k_rel + n_copies; j < p; ++j) {
        names[position[j]] = "IRR_" + padded(j - k_rel - n_copies);
    }
    for (std::size_t j = 0; j < k_rel; ++j) meta.relevant.push_back(position[j]);
    std::sort(meta.relevant.begin(), meta.relevant.end());

    std::vector<double> response(n, 0.0);
    double analytic = spec.noise_sd * spec.noise_sd;
    const std::size_t nn = n;
    auto final_col = [&](std::size_t final_index) { return values.data() + final_index * nn; };
    for (const GenerativeTerm& t : meta.terms) {
        switch (t.kind) {
            case GenerativeTerm::Kind::Linear: {
                const double* a = final_col(t.feature_a);
                for (std::size_t i = 0; i < n; ++i) response[i] += t.coefficient * a[i];
                analytic += t.coefficient * t.coefficient;
                break;
            }
            case GenerativeTerm::Kind::Product: {
                const double* a = final_col(t.feature_a);
                const double* b = final_col(t.feature_b);
                for (std::size_t i = 0; i < n; ++i) response[i] += t.coefficient * a[i] * b[i];
                analytic += t.coefficient * t.coefficient;
                break;
            }
            case GenerativeTerm::Kind::Sine: {
                const double* a = final_col(t.feature_a);
                for (std::size_t i = 0; i < n; ++i) {
                    response[i] += t.coefficient * std::sin(t.frequency * a[i]);
                }
                analytic += sine_variance(t.coefficient, t.frequency);
                break;
            }
        }
    }
    {
        Rng noise_rng(derive_seed(spec.seed, 1));
        for (std::size_t i = 0; i < n; ++i) response[i] += spec.noise_sd * noise_rng.normal();
    }
    meta.analytic_variance = analytic;

    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = "cmp" + padded(i);

    SyntheticDataset out;
    out.data = Dataset(std::move(ids), std::move(names), std::move(values), std::move(response));
    out.meta = std::move(meta);
    return out;
}

void write_meta_json(const SyntheticMeta& meta, const SyntheticSpec& spec,
                     const std::string& path) {
    nlohmann::json terms = nlohmann::json::array();
    for (const GenerativeTerm& t : meta.terms) {
        nlohmann::json jt;
        switch (t.kind) {
            case GenerativeTerm::Kind::Linear:
                jt["kind"] = "linear";
                jt["feature"] = t.feature_a;
                break;
            case GenerativeTerm::Kind::Product:
                jt["kind"] = "product";
                jt["feature_a"] = t.feature_a;
                jt["feature_b"] = t.feature_b;
                break;
            case GenerativeTerm::Kind::Sine:
                jt["kind"] = "sine";
                jt["feature"] = t.feature_a;
                jt["frequency"] = t.frequency;
                break;
        }
        jt["coefficient"] = t.coefficient;
        terms.push_back(std::move(jt));
    }
    nlohmann::json copies = nlohmann::json::array();
    for (const auto& [copy, source] : meta.correlated_copies) {
        copies.push_back({{"copy", copy}, {"source", source}, {"rho", spec.correlation_rho}});
    }
    const nlohmann::json doc = {
        {"spec",
         {{"n", spec.n},
          {"p", spec.p},
          {"k_linear", spec.k_linear},
          {"k_nonlinear", spec.k_nonlinear},
          {"noise_sd", spec.noise_sd},
          {"correlation_rho", spec.correlation_rho},
          {"seed", spec.seed}}},
        {"relevant", meta.relevant},
        {"terms", terms},
        {"correlated_copies", copies},
        {"analytic_variance", meta.analytic_variance},
    };
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << doc.dump(2) << '\n';
    if (!f) throw IoError("i/o failure while writing '" + path + "'");
}

}  // namespace rfq
