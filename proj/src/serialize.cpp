#include "qlab/serialize.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace qlab {

using nlohmann::json;

json ensemble_to_json(const Ensemble& e) {
  json items = json::array();
  for (const WeightedState& it : e.items()) {
    json re = json::array();
    json im = json::array();
    for (const cxd& a : it.state.amplitudes()) {
      re.push_back(a.real());
      im.push_back(a.imag());
    }
    items.push_back({{"prior", it.prior}, {"state_re", re}, {"state_im", im}});
  }
  return {{"dim", e.dim()}, {"items", items}};
}

Ensemble ensemble_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("items")) {
    throw std::invalid_argument("ensemble document needs 'dim' and 'items'");
  }
  const int dim = j.at("dim").get<int>();
  std::vector<WeightedState> items;
  for (const json& it : j.at("items")) {
    const auto& re = it.at("state_re");
    const auto& im = it.at("state_im");
    if (re.size() != im.size() || static_cast<int>(re.size()) != dim) {
      throw std::invalid_argument("ensemble state has wrong length");
    }
    std::vector<cxd> amp;
    amp.reserve(re.size());
    for (std::size_t k = 0; k < re.size(); ++k) {
      amp.emplace_back(re[k].get<double>(), im[k].get<double>());
    }
    items.push_back({it.at("prior").get<double>(), PureState(std::move(amp))});
  }
  return Ensemble(dim, std::move(items));
}

json povm_to_json(const Povm& p) {
  json elements = json::array();
  for (int b = 0; b < p.size(); ++b) {
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < p.dim(); ++i) {
      json rrow = json::array();
      json irow = json::array();
      for (int j2 = 0; j2 < p.dim(); ++j2) {
        rrow.push_back(p.element(b).matrix()(i, j2).real());
        irow.push_back(p.element(b).matrix()(i, j2).imag());
      }
      re.push_back(rrow);
      im.push_back(irow);
    }
    elements.push_back({{"re", re}, {"im", im}});
  }
  return {{"dim", p.dim()}, {"elements", elements}};
}

Povm povm_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("elements")) {
    throw std::invalid_argument("povm document needs 'dim' and 'elements'");
  }
  const int dim = j.at("dim").get<int>();
  std::vector<HermitianOperator> elements;
  for (const json& el : j.at("elements")) {
    const auto& re = el.at("re");
    const auto& im = el.at("im");
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        m(r, c) = cxd(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
      }
    }
    elements.push_back(HermitianOperator(m));
  }
  return Povm(dim, std::move(elements));
}

json report_to_json(const OptimizationReport& r) {
  json resynthesis = json::array();
  for (const PureState& v : r.best_strategy.resynthesis()) {
    json re = json::array();
    json im = json::array();
    for (const cxd& a : v.amplitudes()) {
      re.push_back(a.real());
      im.push_back(a.imag());
    }
    resynthesis.push_back({{"state_re", re}, {"state_im", im}});
  }
  return {{"best_value", r.best_value},
          {"best_povm", povm_to_json(r.best_povm)},
          {"resynthesis", resynthesis},
          {"per_restart_values", r.per_restart_values},
          {"iterations_used", r.iterations_used},
          {"seed", r.seed},
          {"converged", r.converged}};
}

}  // namespace qlab
