#include "numrange/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace numrange {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                           47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
                           109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
constexpr int kMaxHaltonDims = static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0]));

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

std::vector<Vector> signed_basis(const SpaceSpec& space) {
  std::vector<Vector> out;
  const int n = space.dim;
  std::vector<Scalar> units = {1.0, -1.0};
  if (space.is_complex()) {
    units.emplace_back(0.0, 1.0);
    units.emplace_back(0.0, -1.0);
  }
  for (int i = 0; i < n; ++i)
    for (const Scalar& u : units) {
      Vector e = Vector::Zero(n);
      e(i) = u;
      out.push_back(std::move(e));
    }
  return out;
}

Vector from_real_coords(const SpaceSpec& space, const std::vector<double>& c) {
  Vector v(space.dim);
  for (int i = 0; i < space.dim; ++i)
    v(i) = space.is_complex() ? Scalar(c[2 * i], c[2 * i + 1]) : Scalar(c[i], 0.0);
  return v;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(root ^ splitmix64(stream + 1));
}

HaltonSequence::HaltonSequence(int dims, std::uint64_t seed) {
  if (dims < 1 || dims > kMaxHaltonDims)
    throw InputError("Halton dimension must be in [1, " + std::to_string(kMaxHaltonDims) + "]");
  std::mt19937_64 rng(split_seed(seed, 0x4a17));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  shift_.resize(dims);
  for (double& s : shift_) s = unit(rng);
}

double HaltonSequence::coord(std::uint64_t i, int j) const {
  double x = radical_inverse(i + 1, kPrimes[j]) + shift_[j];
  return x >= 1.0 ? x - 1.0 : x;
}

std::vector<double> HaltonSequence::point(std::uint64_t i) const {
  std::vector<double> out(shift_.size());
  for (int j = 0; j < dims(); ++j) out[j] = coord(i, j);
  return out;
}

SphereScheme sphere_scheme_from_string(const std::string& name) {
  if (name == "grid") return SphereScheme::Grid;
  if (name == "quasi-random") return SphereScheme::QuasiRandom;
  throw InputError("sampling scheme must be \"grid\" or \"quasi-random\", got \"" + name + "\"");
}

std::string to_string(SphereScheme scheme) {
  return scheme == SphereScheme::Grid ? "grid" : "quasi-random";
}

std::vector<Vector> sphere_sample(const SpaceSpec& space, SphereScheme scheme, std::size_t count,
                                  std::uint64_t seed) {
  if (count < 1) throw InputError("sphere_sample needs count >= 1");
  const int d = space.is_complex() ? 2 * space.dim : space.dim;
  std::vector<Vector> out;

  if (scheme == SphereScheme::Grid) {
    auto boundary_size = [d](long r) {
      double full = std::pow(2.0 * r + 1.0, d), inner = std::pow(2.0 * r - 1.0, d);
      return full - inner;
    };
    long r = 1;
    while (boundary_size(r) < static_cast<double>(count)) ++r;
    std::vector<long> idx(d, -r);
    std::vector<double> c(d);
    while (true) {
      long maxabs = 0;
      for (int j = 0; j < d; ++j) maxabs = std::max(maxabs, std::labs(idx[j]));
      if (maxabs == r) {
        for (int j = 0; j < d; ++j) c[j] = static_cast<double>(idx[j]) / static_cast<double>(r);
        Vector v = from_real_coords(space, c);
        out.push_back(v / lp_norm(v, space.p));
      }
      int j = d - 1;
      while (j >= 0 && idx[j] == r) idx[j--] = -r;
      if (j < 0) break;
      ++idx[j];
    }
    return out;
  }

  out = signed_basis(space);
  if (out.size() > count) out.resize(count);
  HaltonSequence seq(d, seed);
  std::vector<double> c(d);
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    double maxabs = 0.0;
    for (int j = 0; j < d; ++j) {
      c[j] = 2.0 * seq.coord(i, j) - 1.0;
      maxabs = std::max(maxabs, std::abs(c[j]));
    }
    if (maxabs < 1e-3) continue;
    Vector v = from_real_coords(space, c);
    out.push_back(v / lp_norm(v, space.p));
  }
  return out;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NUMRANGE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace numrange
