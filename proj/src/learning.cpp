#include "navspace/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace navspace::learning {

bool is_prob_vector(std::span<const double> p, double tol) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= tol;
}

double apply_activation(Activation act, double x) {
    switch (act) {
        case Activation::identity: return x;
        case Activation::relu: return x > 0.0 ? x : 0.0;
        case Activation::tanh: return std::tanh(x);
    }
    return x;
}

GraphSpec make_chain_graph(const std::vector<Eigen::VectorXd>& features) {
    GraphSpec g;
    g.n_nodes = static_cast<int>(features.size());
    g.features = features;
    g.adjacency.resize(g.n_nodes);
    for (int i = 0; i + 1 < g.n_nodes; ++i) {
        g.adjacency[i].push_back(i + 1);
        g.adjacency[i + 1].push_back(i);
    }
    return g;
}

std::vector<double> draw_gumbel(std::mt19937_64& rng, size_t n) {
    std::vector<double> g(n);
    for (size_t i = 0; i < n; ++i) {
        // 53-bit uniform in [0, 1), nudged away from 0 for the double log.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u <= 0.0) u = 0x1.0p-53;
        g[i] = -std::log(-std::log(u));
    }
    return g;
}

ProbVector gumbel_softmax_from_noise(std::span<const double> logits, double tau,
                                     std::span<const double> noise) {
    if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
    if (logits.size() != noise.size())
        throw std::invalid_argument("noise length must match logits");
    ProbVector out(logits.size());
    double max_z = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < logits.size(); ++i) {
        out[i] = (logits[i] + noise[i]) / tau;
        max_z = std::max(max_z, out[i]);
    }
    double sum = 0.0;
    for (double& z : out) {
        z = std::exp(z - max_z);
        sum += z;
    }
    for (double& z : out) z /= sum;
    return out;
}

ProbVector gumbel_softmax_sample(std::span<const double> logits, double tau,
                                 std::mt19937_64& rng) {
    const std::vector<double> g = draw_gumbel(rng, logits.size());
    return gumbel_softmax_from_noise(logits, tau, g);
}

double categorical_kl(std::span<const double> q, std::span<const double> p) {
    if (q.size() != p.size()) throw std::invalid_argument("distribution length mismatch");
    double kl = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;  // 0 log 0 = 0
        if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
        kl += q[i] * (std::log(q[i]) - std::log(p[i]));
    }
    return std::max(kl, 0.0);
}

double net1_loss(const Image& x, const std::vector<Image>& x_hat_samples,
                 const CategoricalField& q_field, const ProbVector& prior,
                 const Net1LossConfig& cfg) {
    if (!(cfg.sigma_sq > 0.0)) throw std::invalid_argument("sigma_sq must be positive");
    if (cfg.k_samples < 1 || cfg.j_pixels < 1)
        throw std::invalid_argument("invalid loss configuration");
    if (static_cast<int>(x_hat_samples.size()) != cfg.k_samples)
        throw std::invalid_argument("sample count does not match configuration");
    if (static_cast<int>(x.size()) != cfg.j_pixels)
        throw std::invalid_argument("image size does not match configuration");
    if (q_field.pixel_count() != cfg.j_pixels)
        throw std::invalid_argument("categorical field size does not match image");
    if (static_cast<int>(prior.size()) != q_field.categories)
        throw std::invalid_argument("prior length does not match categories");

    double kl_sum = 0.0;
    for (int j = 0; j < cfg.j_pixels; ++j) kl_sum += categorical_kl(q_field.pixel(j), prior);

    double recon = 0.0;
    for (const Image& xh : x_hat_samples) {
        if (xh.size() != x.size()) throw std::invalid_argument("image dimension mismatch");
        for (size_t i = 0; i < x.size(); ++i) {
            const double d = x.pixels[i] - xh.pixels[i];
            recon += d * d;
        }
    }
    recon /= 2.0 * cfg.k_samples * cfg.sigma_sq;

    return kl_sum + recon + 0.5 * cfg.j_pixels * std::log(cfg.sigma_sq);
}

double ssim(const Image& a, const Image& b, int window, double c1, double c2) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("image dimension mismatch");
    if (window < 1 || window > std::min(a.width, a.height))
        throw std::invalid_argument("window does not fit the image");

    const int n = window * window;
    double total = 0.0;
    int count = 0;
    for (int v0 = 0; v0 + window <= a.height; ++v0) {
        for (int u0 = 0; u0 + window <= a.width; ++u0) {
            double sa = 0.0, sb = 0.0;
            for (int dv = 0; dv < window; ++dv) {
                for (int du = 0; du < window; ++du) {
                    sa += a.at(u0 + du, v0 + dv);
                    sb += b.at(u0 + du, v0 + dv);
                }
            }
            const double mu_a = sa / n;
            const double mu_b = sb / n;
            double var_a = 0.0, var_b = 0.0, cov = 0.0;
            for (int dv = 0; dv < window; ++dv) {
                for (int du = 0; du < window; ++du) {
                    const double da = a.at(u0 + du, v0 + dv) - mu_a;
                    const double db = b.at(u0 + du, v0 + dv) - mu_b;
                    var_a += da * da;
                    var_b += db * db;
                    cov += da * db;
                }
            }
            var_a /= n;
            var_b /= n;
            cov /= n;
            const double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
            const double den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
            total += num / den;
            ++count;
        }
    }
    return total / count;
}

double net2_loss(const Image& target, const Image& recon, double lambda1, double lambda2,
                 int window) {
    if (std::abs(lambda1 + lambda2 - 1.0) > 1e-9)
        throw std::invalid_argument("loss weights must sum to 1");
    if (target.width != recon.width || target.height != recon.height)
        throw std::invalid_argument("image dimension mismatch");

    double mse = 0.0;
    for (size_t i = 0; i < target.size(); ++i) {
        const double d = target.pixels[i] - recon.pixels[i];
        mse += d * d;
    }
    mse /= static_cast<double>(target.size());

    double structural = 0.0;
    if (lambda1 != 0.0) {
        int w = std::min({window, target.width, target.height});
        if (w % 2 == 0) --w;
        structural = lambda1 * (1.0 - ssim(target, recon, w)) / 2.0;
    }
    return structural + lambda2 * mse;
}

std::vector<Eigen::VectorXd> gcn_layer_forward(const GraphSpec& graph,
                                               const GcnLayerParams& params) {
    if (params.w0.rows() != params.w1.rows() || params.w0.cols() != params.w1.cols())
        throw std::invalid_argument("weight matrices must share dimensions");
    if (graph.n_nodes != static_cast<int>(graph.features.size()) ||
        graph.n_nodes != static_cast<int>(graph.adjacency.size()))
        throw std::invalid_argument("graph node count mismatch");

    std::vector<Eigen::VectorXd> out(graph.n_nodes);
    for (int i = 0; i < graph.n_nodes; ++i) {
        if (graph.features[i].size() != params.w0.cols())
            throw std::invalid_argument("feature dimension does not match weights");
        Eigen::VectorXd acc = params.w0 * graph.features[i];
        for (int j : graph.adjacency[i]) acc += params.w1 * graph.features[j];
        for (Eigen::Index k = 0; k < acc.size(); ++k)
            acc[k] = apply_activation(params.activation, acc[k]);
        out[i] = std::move(acc);
    }
    return out;
}

std::vector<Eigen::VectorXd> gcn_stack_forward(const GraphSpec& graph,
                                               const std::vector<GcnLayerParams>& layers) {
    GraphSpec current = graph;
    for (const GcnLayerParams& layer : layers) {
        std::vector<Eigen::VectorXd> next = gcn_layer_forward(current, layer);
        for (int i = 0; i < current.n_nodes; ++i) {
            if (next[i].size() != current.features[i].size())
                throw std::invalid_argument("residual layer must preserve dimension");
            next[i] += current.features[i];
        }
        current.features = std::move(next);
    }
    return current.features;
}

std::vector<double> bilinear_pool(const FeatureMap& map, double u, double v) {
    if (map.width < 1 || map.height < 1 || map.channels < 1)
        throw std::invalid_argument("empty feature map");
    if (!(u >= 0.0 && u <= map.width - 1 && v >= 0.0 && v <= map.height - 1))
        throw std::out_of_range("pool point outside the feature map");

    const int u0 = std::clamp(static_cast<int>(std::floor(u)), 0, map.width - 1);
    const int v0 = std::clamp(static_cast<int>(std::floor(v)), 0, map.height - 1);
    const int u1 = std::min(u0 + 1, map.width - 1);
    const int v1 = std::min(v0 + 1, map.height - 1);
    const double fu = u - u0;
    const double fv = v - v0;

    std::vector<double> out(map.channels, 0.0);
    const auto p00 = map.at(u0, v0);
    const auto p10 = map.at(u1, v0);
    const auto p01 = map.at(u0, v1);
    const auto p11 = map.at(u1, v1);
    for (int c = 0; c < map.channels; ++c) {
        out[c] = (1.0 - fu) * (1.0 - fv) * p00[c] + fu * (1.0 - fv) * p10[c] +
                 (1.0 - fu) * fv * p01[c] + fu * fv * p11[c];
    }
    return out;
}

}  // namespace navspace::learning
