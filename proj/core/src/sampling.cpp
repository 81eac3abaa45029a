#include "sipkit/sampling.hpp"

#include <Eigen/QR>

namespace sipkit {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Vector gaussian_vector(Rng& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v;
}

Vector normalized(const NormSpec& spec, const Vector& x) {
  const double n = norm_eval(spec, x);
  if (!(n > 0.0)) throw InvalidInput("cannot normalize the zero vector");
  return x / n;
}

Vector random_unit_in_span(const NormSpec& spec, const Matrix& span, Rng& rng) {
  for (;;) {
    const Vector c = gaussian_vector(rng, static_cast<int>(span.cols()));
    const Vector x = span * c;
    if (x.norm() > 1e-12 * span.norm()) return normalized(spec, x);
  }
}

std::vector<Vector> adapted_unit_vectors(const NormSpec& spec,
                                         const Matrix& basis) {
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    out.push_back(normalized(spec, basis.col(i)));
  }
  const std::size_t m = out.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      out.push_back(normalized(spec, out[i] + out[j]));
      out.push_back(normalized(spec, out[i] - out[j]));
    }
  }
  return out;
}

int numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

}  // namespace sipkit
