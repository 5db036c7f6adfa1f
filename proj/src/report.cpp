#include "drinfeld/report.hpp"

namespace drinfeld {

namespace {

std::string sci(const BigFloat& x) { return x.str(6, std::ios_base::scientific); }

}  // namespace

nlohmann::json report_to_json(const RelationReport& r, const nlohmann::json& provenance) {
  nlohmann::json j;
  j["relation"] = std::string(1, r.relation);
  j["phi_source"] = r.phi_source;
  j["mu"] = r.mu;
  j["N"] = r.N;
  j["max_weight"] = r.W;
  j["mode"] = r.exact ? "exact" : "numeric";
  nlohmann::json res = nlohmann::json::array();
  for (const auto& e : r.residuals) res.push_back({{"N", e.N}, {"degree", e.degree}, {"value", e.value}});
  j["residuals"] = res;
  j["tolerance"] = r.tolerance;
  if (!r.convention.empty()) j["convention"] = r.convention;
  j["pass"] = r.pass;
  j["elapsed_ms"] = static_cast<int64_t>(r.elapsed_ms);
  j["provenance"] = provenance;
  return j;
}

nlohmann::json solve_sidecar(const SolveResult& s, uint64_t seed, const ConstraintOptions& opt) {
  nlohmann::json j;
  j["max_weight"] = s.phi.order();
  j["seed"] = seed;
  j["pentagon"] = opt.pentagon;
  j["shuffle"] = opt.shuffle;
  j["hexagon_mu2"] = opt.hexagon_mu2 ? nlohmann::json(to_string(*opt.hexagon_mu2)) : nlohmann::json(nullptr);
  nlohmann::json degs = nlohmann::json::array();
  for (const auto& d : s.degrees) {
    std::vector<std::string> params;
    for (const auto& p : d.parameters) params.push_back(to_string(p));
    degs.push_back({{"degree", d.degree},
                    {"unknowns", d.unknowns},
                    {"shuffle_rank", d.shuffle_rank},
                    {"extra_rank", d.extra_rank},
                    {"dimension", d.free_parameters},
                    {"parameters", params}});
  }
  j["degrees"] = degs;
  return j;
}

nlohmann::json kz_check_json(const KZCheck& c) {
  return {{"grouplike", sci(c.grouplike)}, {"pentagon", sci(c.pentagon)}, {"hexagon1", sci(c.hexagon1)},
          {"hexagon2", sci(c.hexagon2)},   {"two_cycle", sci(c.two_cycle)}, {"tolerance", sci(c.tol)},
          {"pass", c.pass}};
}

}  // namespace drinfeld
