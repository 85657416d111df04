#pragma once

// Loss and layer kernels for the segmentation autoencoders: Gumbel-Softmax
// sampling, categorical KL, the VAE total loss, SSIM, the composite
// SSIM+MSE loss, graph convolution forward passes and bilinear feature
// pooling. Pure numeric functions, no training machinery.

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace navspace::learning {

// Nonnegative entries summing to 1 within 1e-9.
using ProbVector = std::vector<double>;

bool is_prob_vector(std::span<const double> p, double tol = 1e-9);

// Grayscale image, row-major doubles.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

    double at(int u, int v) const { return pixels[static_cast<size_t>(v) * width + u]; }
    double& at(int u, int v) { return pixels[static_cast<size_t>(v) * width + u]; }
    size_t size() const { return pixels.size(); }
};

struct Net1LossConfig {
    double sigma_sq = 1.0;  // Gaussian reconstruction variance
    int k_samples = 1;      // Monte Carlo sample count
    int j_pixels = 1;       // pixel count per image
};

// Per-pixel categorical field: j_pixels rows of `categories` probabilities.
struct CategoricalField {
    int categories = 0;
    std::vector<double> probs;  // j_pixels * categories, row-major

    int pixel_count() const {
        return categories > 0 ? static_cast<int>(probs.size()) / categories : 0;
    }
    std::span<const double> pixel(int j) const {
        return {probs.data() + static_cast<size_t>(j) * categories,
                static_cast<size_t>(categories)};
    }
};

enum class Activation { identity, relu, tanh };

double apply_activation(Activation act, double x);

struct GcnLayerParams {
    Eigen::MatrixXd w0;  // self weight, d_out x d_in
    Eigen::MatrixXd w1;  // neighbor weight, d_out x d_in
    Activation activation = Activation::identity;
};

// Undirected graph with per-node feature vectors.
struct GraphSpec {
    int n_nodes = 0;
    std::vector<std::vector<int>> adjacency;  // neighbor lists, symmetric, no self loops
    std::vector<Eigen::VectorXd> features;
};

// Chain graph 0-1-...-(n-1), the polyline topology.
GraphSpec make_chain_graph(const std::vector<Eigen::VectorXd>& features);

// Standard Gumbel(0,1) noise g = -log(-log(U)). Deterministic given the
// engine state; uses a fixed 53-bit uniform so output does not depend on
// the standard library's distribution implementation.
std::vector<double> draw_gumbel(std::mt19937_64& rng, size_t n);

// softmax((logits + g) / tau) with caller-supplied noise; the test seam.
ProbVector gumbel_softmax_from_noise(std::span<const double> logits, double tau,
                                     std::span<const double> noise);

ProbVector gumbel_softmax_sample(std::span<const double> logits, double tau,
                                 std::mt19937_64& rng);

// Sum_c q_c (log q_c - log p_c), with 0 log 0 = 0. Returns +infinity when
// q has mass where p has none (out-of-support signal).
double categorical_kl(std::span<const double> q, std::span<const double> p);

// Single-image VAE loss: per-pixel KL to the prior, Monte Carlo Gaussian
// reconstruction term and the variance normalizer (J/2) log sigma^2.
double net1_loss(const Image& x, const std::vector<Image>& x_hat_samples,
                 const CategoricalField& q_field, const ProbVector& prior,
                 const Net1LossConfig& cfg);

// Mean over all fully-inside sliding windows of the standard SSIM formula,
// uniform window weighting, population moments.
double ssim(const Image& a, const Image& b, int window = 11, double c1 = 0.0001,
            double c2 = 0.0009);

// lambda1 * (1 - SSIM)/2 + lambda2 * mean squared error. Weights must sum
// to 1 within 1e-9. The SSIM window is clamped to the image size.
double net2_loss(const Image& target, const Image& recon, double lambda1, double lambda2,
                 int window = 11);

// f_i' = act(w0 f_i + sum_{j in N(i)} w1 f_j), synchronous update.
std::vector<Eigen::VectorXd> gcn_layer_forward(const GraphSpec& graph,
                                               const GcnLayerParams& params);

// Residual stack: each layer output has the layer input added elementwise.
std::vector<Eigen::VectorXd> gcn_stack_forward(const GraphSpec& graph,
                                               const std::vector<GcnLayerParams>& layers);

// Grid of d-vectors with bilinear interpolation at real-valued positions.
struct FeatureMap {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> data;  // (v * width + u) * channels + c

    std::span<const double> at(int u, int v) const {
        return {data.data() + (static_cast<size_t>(v) * width + u) * channels,
                static_cast<size_t>(channels)};
    }
};

// Throws std::out_of_range when the point leaves [0, W-1] x [0, H-1].
std::vector<double> bilinear_pool(const FeatureMap& map, double u, double v);

}  // namespace navspace::learning
