#include <cmath>

#include "doctest.h"
#include "varmap/optim.hpp"
#include "varmap/rng.hpp"
#include "varmap/tape.hpp"
#include "varmap/tensor.hpp"

using namespace varmap;
using namespace varmap::nn;

namespace {

Tensor random_tensor(int rows, int cols, Rng& rng, double scale = 1.0) {
  Tensor t(rows, cols);
  for (auto& v : t.data) v = scale * rng.normal();
  return t;
}

// Central finite differences of f at x, one entry at a time.
template <class F>
Tensor finite_diff(Tensor& x, F&& f, double eps = 1e-5) {
  Tensor g(x.rows, x.cols);
  for (size_t i = 0; i < x.data.size(); ++i) {
    double saved = x.data[i];
    x.data[i] = saved + eps;
    double up = f();
    x.data[i] = saved - eps;
    double down = f();
    x.data[i] = saved;
    g.data[i] = (up - down) / (2 * eps);
  }
  return g;
}

double max_rel_err(const Tensor& a, const Tensor& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    double denom = std::max({1e-6, std::fabs(a.data[i]), std::fabs(b.data[i])});
    worst = std::max(worst, std::fabs(a.data[i] - b.data[i]) / denom);
  }
  return worst;
}

}  // namespace

TEST_CASE("softmax of equal scores is uniform") {
  Tensor s(1, 5);
  s.fill(3.7);
  Tensor p = softmax_rows_forward(s);
  for (int j = 0; j < 5; ++j) CHECK(p.at(0, j) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("softmax rows sum to one and stay positive") {
  Rng rng(7);
  Tensor s = random_tensor(6, 4, rng, 10.0);
  Tensor p = softmax_rows_forward(s);
  for (int i = 0; i < p.rows; ++i) {
    double sum = 0.0;
    for (int j = 0; j < p.cols; ++j) {
      CHECK(p.at(i, j) > 0.0);
      sum += p.at(i, j);
    }
    CHECK(std::fabs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("cross entropy of a one-hot row at its label is zero") {
  Tensor p(1, 3);
  p.at(0, 1) = 1.0;
  CHECK(cross_entropy_mean_forward(p, {1}) == doctest::Approx(0.0));
  CHECK_THROWS(cross_entropy_mean_forward(p, {5}));
  CHECK_THROWS(cross_entropy_mean_forward(p, {0, 1}));
}

TEST_CASE("layer norm of (1,3) with unit gain is (-1,1)") {
  Tensor x(1, 2);
  x.at(0, 0) = 1.0;
  x.at(0, 1) = 3.0;
  Tensor gain(1, 2);
  gain.fill(1.0);
  Tensor bias(1, 2);
  Tensor y = layer_norm_rows_forward(x, gain, bias, 1e-5);
  CHECK(y.at(0, 0) == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(y.at(0, 1) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("relu gradient is the positive-side indicator") {
  Tensor x(1, 2);
  x.at(0, 0) = -1.0;
  x.at(0, 1) = 2.0;
  Tensor grad(1, 2);

  Tape tape;
  auto xid = tape.leaf(x, &grad);
  auto y = tape.relu(xid);
  // sum via matmul with a ones column
  Tensor ones(2, 1);
  ones.fill(1.0);
  auto total = tape.matmul(y, tape.constant(ones));
  tape.backward(total);
  CHECK(grad.at(0, 0) == 0.0);
  CHECK(grad.at(0, 1) == 1.0);
}

TEST_CASE("cross entropy through softmax gives P minus one-hot") {
  Rng rng(3);
  Tensor s = random_tensor(1, 4, rng);
  Tensor grad(1, 4);

  Tape tape;
  auto sid = tape.leaf(s, &grad);
  auto p = tape.softmax_rows(sid);
  auto loss = tape.cross_entropy_mean(p, {2});
  tape.backward(loss);

  Tensor probs = softmax_rows_forward(s);
  for (int j = 0; j < 4; ++j) {
    double expected = probs.at(0, j) - (j == 2 ? 1.0 : 0.0);
    CHECK(grad.at(0, j) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("backward on a loss disconnected from parameters is a no-op") {
  Tensor x(1, 2);
  x.fill(1.0);
  Tensor grad(1, 2);
  Tape tape;
  tape.leaf(x, &grad);  // unused leaf
  auto c = tape.constant(x);
  auto y = tape.relu(c);
  tape.backward(y);
  CHECK(grad.at(0, 0) == 0.0);
  CHECK(grad.at(0, 1) == 0.0);
}

TEST_CASE("every differentiable op passes a finite difference check") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    Tensor a = random_tensor(3, 4, rng);
    Tensor b = random_tensor(4, 2, rng);
    Tensor c = random_tensor(3, 4, rng);
    Tensor gain = random_tensor(1, 4, rng, 0.5);
    Tensor bias = random_tensor(1, 4, rng, 0.5);
    std::vector<int> labels = {rng.next_int(2), rng.next_int(2), rng.next_int(2)};

    Tensor ga(3, 4), gb(4, 2), gc(3, 4), ggain(1, 4), gbias(1, 4);
    auto forward = [&](bool with_grads) {
      ga.fill(0); gb.fill(0); gc.fill(0); ggain.fill(0); gbias.fill(0);
      Tape tape;
      auto aid = tape.leaf(a, &ga);
      auto bid = tape.leaf(b, &gb);
      auto cid = tape.leaf(c, &gc);
      auto gid = tape.leaf(gain, &ggain);
      auto biid = tape.leaf(bias, &gbias);
      auto sum = tape.add(aid, cid);
      auto scaled = tape.scale(sum, 0.7);
      auto normed = tape.layer_norm_rows(scaled, gid, biid);
      auto act = tape.relu(normed);
      auto mm = tape.matmul(act, bid);
      auto probs = tape.softmax_rows(mm);
      auto loss = tape.cross_entropy_mean(probs, labels);
      if (with_grads) tape.backward(loss);
      return tape.scalar(loss);
    };

    forward(true);
    Tensor saved_ga = ga, saved_gb = gb, saved_gc = gc, saved_gg = ggain, saved_gbi = gbias;
    auto eval = [&] { return forward(false); };
    CHECK(max_rel_err(saved_ga, finite_diff(a, eval)) < 1e-4);
    CHECK(max_rel_err(saved_gb, finite_diff(b, eval)) < 1e-4);
    CHECK(max_rel_err(saved_gc, finite_diff(c, eval)) < 1e-4);
    CHECK(max_rel_err(saved_gg, finite_diff(gain, eval)) < 1e-4);
    CHECK(max_rel_err(saved_gbi, finite_diff(bias, eval)) < 1e-4);
  }
}

TEST_CASE("matmul_bt matches matmul with an explicit transpose") {
  Rng rng(5);
  Tensor a = random_tensor(3, 4, rng);
  Tensor b = random_tensor(5, 4, rng);
  Tensor lhs = matmul_bt(a, b);
  Tensor rhs = matmul(a, transpose(b));
  REQUIRE(lhs.same_shape(rhs));
  for (size_t i = 0; i < lhs.data.size(); ++i)
    CHECK(lhs.data[i] == doctest::Approx(rhs.data[i]).epsilon(1e-12));
}

TEST_CASE("adam leaves parameters unchanged on zero gradient") {
  Tensor p(2, 2);
  p.fill(1.5);
  Tensor g(2, 2);
  AdamState state = AdamState::init({&p});
  adam_step({&p}, {&g}, state);
  CHECK(state.step == 1);
  for (double v : p.data) CHECK(v == 1.5);
}

TEST_CASE("first adam step moves by about the learning rate") {
  Tensor p(1, 1);
  Tensor g(1, 1);
  g.data[0] = 1.0;
  AdamState state = AdamState::init({&p});
  adam_step({&p}, {&g}, state);
  CHECK(p.data[0] == doctest::Approx(-1e-3).epsilon(1e-6));
}

TEST_CASE("adam descends a convex quadratic") {
  // f(p) = (p - 3)^2, gradient 2(p - 3)
  Tensor p(1, 1);
  AdamState state = AdamState::init({&p}, {.lr = 0.05});
  double prev = (p.data[0] - 3) * (p.data[0] - 3);
  for (int i = 0; i < 200; ++i) {
    Tensor g(1, 1);
    g.data[0] = 2 * (p.data[0] - 3);
    adam_step({&p}, {&g}, state);
  }
  double now = (p.data[0] - 3) * (p.data[0] - 3);
  CHECK(now < prev);
  CHECK(now < 1.0);
}
