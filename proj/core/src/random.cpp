#include "sweep/random.hpp"

#include <bit>
#include <cmath>

namespace sweep {

std::uint64_t StreamKey::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

StreamKey StreamKey::split(std::uint64_t value) const {
  return StreamKey(Raw{}, mix(state_ ^ mix(value + 0x632be59bd9b4e019ULL)));
}

StreamKey StreamKey::split(std::string_view tag) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return split(h);
}

StreamKey StreamKey::split(double value) const {
  if (value == 0.0) value = 0.0;  // fold -0 onto +0
  return split(std::bit_cast<std::uint64_t>(value));
}

StreamKey StreamKey::split(const Vec& v) const {
  StreamKey key = split(static_cast<std::uint64_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) key = key.split(v[i]);
  return key;
}

double Rng::uniform(double lo, double hi) {
  // 53 random mantissa bits, independent of the standard library's
  // distribution implementation.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() { return normal_(engine_); }

Vec Rng::direction(Eigen::Index n) {
  Vec d(n);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < n; ++i) d[i] = normal();
    norm = d.norm();
  } while (norm < 1e-12);
  return d / norm;
}

}  // namespace sweep
