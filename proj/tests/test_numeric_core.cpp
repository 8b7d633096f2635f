#include <cmath>

#include "doctest.h"
#include "mia/io_util.hpp"
#include "mia/mlp.hpp"
#include "mia/rng.hpp"
#include "test_util.hpp"

using namespace mia;
using namespace mia::testutil;

TEST_SUITE_BEGIN("numeric-core");

TEST_CASE("forward: single identity layer maps input to itself") {
  MlpNetwork net;
  Layer l;
  l.weight = Mat(2, 2);
  l.weight.at(0, 0) = 1.0;
  l.weight.at(1, 1) = 1.0;
  l.bias = Vec{0.0, 0.0};
  l.activation = Activation::identity;
  net.layers.push_back(l);

  const Vec out = mlp_forward(net, Vec{1.0, 2.0});
  CHECK(out == Vec{1.0, 2.0});
}

TEST_CASE("forward: hand-computed relu layer") {
  MlpNetwork net;
  Layer l;
  l.weight = Mat(2, 2);
  l.weight.at(0, 0) = 2.0;
  l.weight.at(1, 1) = 3.0;
  l.bias = Vec{1.0, -1.0};
  l.activation = Activation::relu;
  net.layers.push_back(l);

  const Vec out = mlp_forward(net, Vec{1.0, -1.0});
  CHECK(out[0] == doctest::Approx(3.0));
  CHECK(out[1] == 0.0);
}

TEST_CASE("forward: random 3-layer net matches naive re-evaluation oracle") {
  const std::vector<LayerSpec> specs = {
      {5, 7, Activation::leaky_relu, 0.2},
      {7, 6, Activation::tanh},
      {6, 3, Activation::identity},
  };
  const MlpNetwork net = random_net(specs, 42);
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec x = rng.normal_vec(5);
    worst = std::max(worst, max_abs_diff(mlp_forward(net, x),
                                         naive_mlp_eval(net, x)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("forward: dimension mismatch names the offending layer") {
  const MlpNetwork net = random_net({{4, 3, Activation::relu}}, 1);
  try {
    mlp_forward(net, Vec{1.0, 2.0});
    FAIL("expected dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension);
    CHECK(std::string(e.what()).find("layer 0") != std::string::npos);
  }
}

TEST_CASE("forward: two passes are bit-identical") {
  const MlpNetwork net = random_net({{6, 8, Activation::sigmoid},
                                     {8, 4, Activation::tanh}}, 3);
  Rng rng(11);
  const Vec x = rng.normal_vec(6);
  const Vec a = mlp_forward(net, x);
  const Vec b = mlp_forward(net, x);
  CHECK(a == b);
}

TEST_CASE("forward: non-finite values are signalled, not propagated") {
  MlpNetwork net;
  Layer l;
  l.weight = Mat(1, 2, 1e308);
  l.bias = Vec{0.0};
  l.activation = Activation::identity;
  net.layers.push_back(l);
  CHECK_THROWS_AS(mlp_forward(net, Vec{10.0, 10.0}), Error);
}

TEST_CASE("backward: identity layer is the chain-rule base case") {
  MlpNetwork net;
  Layer l;
  l.weight = Mat(2, 2);
  l.weight.at(0, 0) = 1.0;
  l.weight.at(1, 1) = 1.0;
  l.bias = Vec{0.0, 0.0};
  l.activation = Activation::identity;
  net.layers.push_back(l);

  const Vec input{0.5, -2.0};
  const Vec g{3.0, -1.0};
  const MlpGradients grads = mlp_backward(net, input, g);
  CHECK(grads.input_grad == g);
  CHECK(grads.layers[0].bias == g);
  // weight grad = g * input^T
  CHECK(grads.layers[0].weight.at(0, 0) == doctest::Approx(1.5));
  CHECK(grads.layers[0].weight.at(0, 1) == doctest::Approx(-6.0));
  CHECK(grads.layers[0].weight.at(1, 0) == doctest::Approx(-0.5));
  CHECK(grads.layers[0].weight.at(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("backward: zero output_grad gives all-zero gradients") {
  const MlpNetwork net = random_net({{3, 5, Activation::relu},
                                     {5, 2, Activation::sigmoid}}, 5);
  const MlpGradients grads = mlp_backward(net, Vec{0.1, 0.2, 0.3}, Vec{0.0, 0.0});
  for (const LayerGrads& lg : grads.layers) {
    for (double w : lg.weight.data) CHECK(w == 0.0);
    for (double b : lg.bias) CHECK(b == 0.0);
  }
  for (double v : grads.input_grad) CHECK(v == 0.0);
}

TEST_CASE("backward: gradients match central finite differences across "
          "activations and architectures") {
  const std::vector<std::vector<LayerSpec>> archs = {
      {{4, 6, Activation::relu}, {6, 3, Activation::identity}},
      {{3, 5, Activation::leaky_relu, 0.2},
       {5, 5, Activation::tanh},
       {5, 2, Activation::sigmoid}},
      {{2, 8, Activation::sigmoid}, {8, 1, Activation::tanh}},
      {{5, 4, Activation::identity}, {4, 4, Activation::leaky_relu, 0.2},
       {4, 3, Activation::relu}},
  };
  Rng rng(123);
  for (std::size_t a = 0; a < archs.size(); ++a) {
    MlpNetwork net = random_net(archs[a], 100 + a);
    const std::size_t in = net.input_dim();
    const std::size_t out = net.output_dim();
    const Vec x = rng.normal_vec(in);
    const Vec c = rng.normal_vec(out);  // loss = c . f(x)

    const MlpGradients grads = mlp_backward(net, x, c);

    // d(c.f)/dx via central differences
    const auto loss_of_input = [&](const Vec& xp) {
      return dot(c, mlp_forward(net, xp));
    };
    CHECK(max_rel_error(grads.input_grad, fd_gradient(loss_of_input, x)) < 1e-4);

    // d(c.f)/dtheta via central differences on the flattened parameters
    const Vec theta = parameters_flatten(net);
    const auto loss_of_params = [&](const Vec& t) {
      MlpNetwork copy = net;
      parameters_assign(copy, t);
      return dot(c, mlp_forward(copy, x));
    };
    CHECK(max_rel_error(gradients_flatten(net, grads),
                        fd_gradient(loss_of_params, theta)) < 1e-4);
  }
}

TEST_CASE("rng: same seed gives identical vectors, different seeds differ") {
  Rng a(99), b(99), c(100);
  const Vec va = a.normal_vec(16);
  const Vec vb = b.normal_vec(16);
  const Vec vc = c.normal_vec(16);
  CHECK(va == vb);
  CHECK(va != vc);
}

TEST_CASE("rng: 1e5 standard normal draws have the right moments") {
  Rng rng(2024);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("rng: uniform_index is in range and forks are independent streams") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) CHECK(rng.uniform_index(7) < 7);
  Rng f1 = rng.fork(1);
  Rng f1_again = Rng(5).fork(1);
  CHECK(f1.normal_vec(4) == f1_again.normal_vec(4));
}

TEST_CASE("model json: write -> read -> write is byte-identical") {
  const MlpNetwork net = random_net({{3, 9, Activation::leaky_relu, 0.2},
                                     {9, 4, Activation::sigmoid},
                                     {4, 2, Activation::identity}}, 77);
  const std::string first = mlp_to_json(net);
  const MlpNetwork parsed = mlp_from_json(first);
  const std::string second = mlp_to_json(parsed);
  CHECK(first == second);
  CHECK(parsed.input_dim() == 3);
  CHECK(parsed.output_dim() == 2);
  CHECK(parameters_flatten(parsed) == parameters_flatten(net));
}

TEST_CASE("model json: malformed documents are rejected") {
  CHECK_THROWS_AS(mlp_from_json("not json"), Error);
  CHECK_THROWS_AS(mlp_from_json("{\"format_version\":1}"), Error);
  CHECK_THROWS_AS(
      mlp_from_json("{\"format_version\":2,\"input_dim\":1,\"output_dim\":1,"
                    "\"layers\":[]}"),
      Error);
}

TEST_CASE("format_double: 17 significant digits round-trip") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const double v = rng.normal() * std::pow(10.0, (i % 13) - 6);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_SUITE_END();
