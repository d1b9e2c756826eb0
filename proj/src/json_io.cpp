#include "coherence/json_io.hpp"

#include <stdexcept>

namespace coherence {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return json{{"dim", m.dim()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != dim * dim || static_cast<int>(im.size()) != dim * dim)
    throw std::invalid_argument("matrix JSON: re/im must have dim^2 entries");
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const int k = r * dim + c;
      m(r, c) = cx{re[k].get<double>(), im[k].get<double>()};
    }
  return m;
}

json state_to_json(const DensityOperator& rho) {
  if (rho.dim() == 2) {
    const BlochVector b = density_to_bloch(rho);
    return json{{"bloch", {b.rx, b.ry, b.rz}}};
  }
  return json{{"matrix", matrix_to_json(rho.matrix())}};
}

json bloch_to_json(const BlochVector& b) { return json{{"bloch", {b.rx, b.ry, b.rz}}}; }

BlochVector bloch_from_json(const json& j) {
  if (j.contains("bloch")) {
    const auto& arr = j.at("bloch");
    if (arr.size() != 3) throw std::invalid_argument("bloch JSON: expected 3 components");
    BlochVector b{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
    if (!b.valid()) throw std::invalid_argument("bloch JSON: vector outside the Bloch ball");
    return b;
  }
  return density_to_bloch(state_from_json(j));
}

DensityOperator state_from_json(const json& j) {
  if (j.contains("bloch")) return bloch_to_density(bloch_from_json(j));
  if (j.contains("matrix")) return DensityOperator(matrix_from_json(j.at("matrix")));
  throw std::invalid_argument("state JSON: expected \"bloch\" or \"matrix\"");
}

}  // namespace coherence
