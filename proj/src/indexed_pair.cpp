#include "numrange/indexed_pair.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace numrange {

std::string to_string(Family family) {
  return family == Family::Nonattained ? "nonattained" : "nonsmooth-corner";
}

Family family_from_string(const std::string& name) {
  if (name == "nonattained") return Family::Nonattained;
  if (name == "nonsmooth-corner" || name == "nonsmooth") return Family::NonsmoothCorner;
  throw InputError("unknown generated family \"" + name + "\"");
}

std::string IndexedPair::label(std::size_t i) const {
  if (index.kind == IndexKind::Generated) return std::to_string(i + 1);
  return index.labels.at(i);
}

std::size_t IndexedPair::find(const std::string& label) const {
  if (index.kind == IndexKind::Generated) {
    std::size_t m = 0;
    const auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), m);
    if (ec != std::errc() || ptr != label.data() + label.size() || m < 1 || m > index.truncation)
      throw InputError("unknown label \"" + label + "\" (generated index must be in 1.." +
                       std::to_string(index.truncation) + ")");
    return m - 1;
  }
  const auto it = std::find(index.labels.begin(), index.labels.end(), label);
  if (it == index.labels.end()) throw InputError("unknown label \"" + label + "\"");
  return static_cast<std::size_t>(it - index.labels.begin());
}

double g_sup_norm(const IndexedPair& pair) {
  double sup = 0.0;
  for (const Vector& v : pair.g) sup = std::max(sup, norm(pair.space, v));
  if (pair.tail) sup = std::max(sup, norm(pair.space, pair.tail->g));
  return sup;
}

namespace {

double f_sup_norm(const IndexedPair& pair) {
  double sup = 0.0;
  for (const Vector& v : pair.f) sup = std::max(sup, norm(pair.space, v));
  if (pair.tail) sup = std::max(sup, norm(pair.space, pair.tail->f));
  return sup;
}

}  // namespace

void check_invariants(const IndexedPair& pair) {
  if (pair.g.empty()) throw InputError("index set must be nonempty");
  if (pair.g.size() != pair.f.size()) throw InputError("g and f must have equal length");
  const double sup = g_sup_norm(pair);
  if (std::abs(sup - 1.0) > kTolGNorm) {
    std::ostringstream os;
    os.precision(17);
    os << "sup_t |g(t)| must be 1, measured max_t |g(t)| = " << sup;
    throw NormalizationError(os.str());
  }
}

IndexedPair make_finite_pair(const SpaceSpec& space, std::vector<std::string> labels,
                             std::vector<Vector> g, std::vector<Vector> f) {
  if (labels.empty()) throw InputError("index set must be nonempty");
  if (labels.size() != g.size() || labels.size() != f.size())
    throw InputError("labels, g and f must have equal length");
  {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("labels must be distinct");
  }
  IndexedPair pair;
  pair.space = space;
  pair.index.kind = IndexKind::Finite;
  pair.index.labels = std::move(labels);
  for (auto& v : g) v = conform(space, std::move(v));
  for (auto& v : f) v = conform(space, std::move(v));
  pair.g = std::move(g);
  pair.f = std::move(f);
  check_invariants(pair);
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t i = 0; i < pair.g.size(); ++i) {
    const double n = norm(space, pair.g[i]);
    if (n > best_norm) {
      best_norm = n;
      best = i;
    }
  }
  pair.certificate = {true, pair.index.labels[best], "attained at index " + pair.index.labels[best]};
  pair.f_sup = f_sup_norm(pair);
  return pair;
}

IndexedPair make_generated_pair(const GeneratedParams& params) {
  if (params.truncation < 1) throw InputError("generated families need N >= 1");
  IndexedPair pair;
  pair.index.kind = IndexKind::Generated;
  pair.index.family = params.family;
  pair.index.truncation = params.truncation;
  const std::size_t n_max = params.truncation;

  if (params.family == Family::Nonattained) {
    if (params.v.size() != 2) throw InputError("nonattained family needs v of length 2");
    const bool cplx = !is_real(params.v);
    pair.space = SpaceSpec(cplx ? Field::Complex : Field::Real, 2, 2.0);
    for (std::size_t m = 1; m <= n_max; ++m) {
      Vector g = Vector::Zero(2);
      g(0) = 1.0 - 1.0 / static_cast<double>(m);
      pair.g.push_back(std::move(g));
      pair.f.push_back(params.v);
    }
    pair.tail = TailLimit{Vector::Unit(2, 0), params.v};
    pair.certificate = {false, "", "sup_m |g(m)| = lim_m (1 - 1/m) = 1, not attained"};
  } else {
    pair.space = SpaceSpec(Field::Real, 2, kInf);
    Vector f(2);
    f << 0.0, 1.0;
    for (std::size_t m = 1; m <= n_max; ++m) {
      Vector g(2);
      g << 1.0, 1.0 - 1.0 / static_cast<double>(m);
      pair.g.push_back(std::move(g));
      pair.f.push_back(f);
    }
    Vector g_inf(2);
    g_inf << 1.0, 1.0;
    pair.tail = TailLimit{g_inf, f};
    pair.certificate = {true, "1", "|g(m)|_inf = 1 at every m; the corner (1, 1) is a limit only"};
  }
  check_invariants(pair);
  pair.f_sup = f_sup_norm(pair);
  return pair;
}

IndexedPair from_operator(const OperatorSpec& op, const SpaceSpec& space,
                          const OperatorSampling& sampling) {
  const int k = op.domain_dim;
  if (k < 1 || k > space.dim) throw InputError("operator domain dimension must be in [1, dim]");
  if (op.matrix.rows() != space.dim || op.matrix.cols() != k)
    throw InputError("operator matrix must be dim x domain_dim");
  if (sampling.count < static_cast<std::size_t>(2 * k))
    throw InputError("operator sampling count must be >= 2 * domain_dim");
  const SpaceSpec domain(space.field, k, space.p);
  const std::vector<Vector> xs = sphere_sample(domain, sampling.scheme, sampling.count, sampling.seed);
  const Matrix t = space.is_complex() ? op.matrix : Matrix(op.matrix.real().cast<Scalar>());

  std::vector<std::string> labels;
  std::vector<Vector> g, f;
  labels.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Vector embedded = Vector::Zero(space.dim);
    embedded.head(k) = xs[i];
    labels.push_back("x" + std::to_string(i));
    g.push_back(std::move(embedded));
    f.push_back(t * xs[i]);
  }
  return make_finite_pair(space, std::move(labels), std::move(g), std::move(f));
}

std::pair<Vector, Vector> evaluate(const IndexedPair& pair, const std::string& label) {
  const std::size_t i = pair.find(label);
  return {pair.g[i], pair.f[i]};
}

IndexedPair scale_f(const IndexedPair& pair, Scalar theta) {
  IndexedPair out = pair;
  if (!pair.space.is_complex() && theta.imag() != 0.0) {
    out.space.field = Field::Complex;
  }
  for (Vector& v : out.f) v *= theta;
  if (out.tail) out.tail->f *= theta;
  out.f_sup = pair.f_sup * std::abs(theta);
  return out;
}

}  // namespace numrange
