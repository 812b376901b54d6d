#include "copdyn/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace copdyn {

Json rat_to_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  if (j.is_string()) {
    auto r = rat_parse(j.get<std::string>());
    if (!r) throw std::invalid_argument("malformed rational: " + j.dump());
    return *r;
  }
  throw std::invalid_argument("expected rational, got " + j.dump());
}

namespace {

Json opt_rat(const std::optional<Rat>& r) {
  return r ? rat_to_json(*r) : Json(nullptr);
}

std::optional<Rat> opt_rat_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rat_from_json(j.at(key));
}

}  // namespace

Json space_to_json(const AtomicSpace& space) {
  Json j;
  j["atoms"] = space.atom_count();
  Json w = Json::array();
  for (const Rat& r : space.weights()) w.push_back(rat_to_json(r));
  j["weights"] = std::move(w);
  j["blocks"] = space.blocks();
  j["tail_mass"] = opt_rat(space.tail_mass());
  j["exit_tail_mass"] = opt_rat(space.exit_tail_mass());
  j["preimage_tail_bound"] = opt_rat(space.preimage_tail_bound());
  return j;
}

AtomicSpace space_from_json(const Json& j) {
  if (!j.contains("weights")) throw std::invalid_argument("missing weights");
  std::vector<Rat> weights;
  for (const auto& w : j.at("weights")) weights.push_back(rat_from_json(w));
  if (j.contains("atoms") &&
      j.at("atoms").get<std::size_t>() != weights.size()) {
    throw std::invalid_argument("atoms does not match weights length");
  }
  std::vector<std::vector<int32_t>> blocks;
  if (j.contains("blocks")) {
    blocks = j.at("blocks").get<std::vector<std::vector<int32_t>>>();
  } else {
    for (std::size_t a = 0; a < weights.size(); ++a) {
      blocks.push_back({static_cast<int32_t>(a)});
    }
  }
  TailSpec tails;
  tails.total = j.contains("tail_mass") ? opt_rat_from(j, "tail_mass")
                                        : std::optional<Rat>{Rat{0}};
  tails.exit_absorbing = opt_rat_from(j, "exit_tail_mass");
  if (j.contains("preimage_tail_bound")) {
    tails.preimage_bound = opt_rat_from(j, "preimage_tail_bound");
  }
  return AtomicSpace::make(std::move(weights), std::move(blocks), tails);
}

Json map_to_json(const AtomMap& f) {
  Json fwd = Json::array();
  for (int32_t t : f.forward()) {
    if (t == kExit) {
      fwd.push_back("EXIT");
    } else {
      fwd.push_back(t);
    }
  }
  Json j;
  j["forward"] = std::move(fwd);
  j["name"] = f.name();
  return j;
}

AtomMap map_from_json(const Json& j) {
  if (!j.contains("forward")) throw std::invalid_argument("missing forward");
  std::vector<int32_t> fwd;
  for (const auto& t : j.at("forward")) {
    if (t.is_string()) {
      if (t.get<std::string>() != "EXIT") {
        throw std::invalid_argument("bad forward entry: " + t.dump());
      }
      fwd.push_back(kExit);
    } else {
      fwd.push_back(t.get<int32_t>());
    }
  }
  return AtomMap::make(std::move(fwd),
                       j.contains("name") ? j.at("name").get<std::string>()
                                          : std::string{});
}

Json system_to_json(const models::BuiltSystem& sys) {
  Json j;
  j["name"] = sys.name;
  j["space"] = space_to_json(sys.space);
  j["map"] = map_to_json(sys.map);
  return j;
}

models::BuiltSystem system_from_json(const Json& j) {
  auto space = space_from_json(j.at("space"));
  auto map = map_from_json(j.at("map"));
  if (map.atom_count() != space.atom_count()) {
    throw std::invalid_argument("map and space atom counts differ");
  }
  std::string name = j.contains("name") ? j.at("name").get<std::string>()
                                        : std::string{"json-system"};
  return {std::move(space), std::move(map), std::move(name)};
}

Json set_to_json(const MeasurableSet& s) { return s.block_ids(); }

MeasurableSet set_from_json(const Json& j) {
  return MeasurableSet::of_blocks(j.get<std::vector<int32_t>>());
}

Json simple_function_to_json(const SimpleFunction& f) {
  Json values = Json::array();
  for (const auto& [b, v] : f.values) {
    values.push_back(Json{{"block", b}, {"value", rat_to_json(v)}});
  }
  Json j;
  j["p"] = f.p;
  j["values"] = std::move(values);
  return j;
}

SimpleFunction simple_function_from_json(const Json& j) {
  SimpleFunction f;
  f.p = j.at("p").get<double>();
  for (const auto& e : j.at("values")) {
    f.values[e.at("block").get<int32_t>()] = rat_from_json(e.at("value"));
  }
  return f;
}

namespace {

Json measured_to_json(const Measured& m) {
  Json j;
  j["mu_A_minus_B"] = rat_to_json(m.mu_A_minus_B);
  j["mu_preimage_B"] = rat_to_json(m.mu_preimage_B);
  j["mu_C"] = rat_to_json(m.mu_C);
  return j;
}

}  // namespace

Json certificate_to_json(const TransitivityCertificate& c) {
  Json j;
  j["epsilon"] = rat_to_json(c.epsilon);
  j["k"] = c.k;
  j["A"] = set_to_json(c.A);
  j["B"] = set_to_json(c.B);
  j["C"] = set_to_json(c.C);
  j["c_includes_exit_tail"] = c.c_includes_exit_tail;
  j["measured"] = measured_to_json(c.measured);
  return j;
}

Json mixing_certificate_to_json(const MixingCertificate& c) {
  Json j;
  j["epsilon"] = rat_to_json(c.epsilon);
  j["A"] = set_to_json(c.A);
  j["k0"] = c.k0;
  Json per = Json::array();
  for (const auto& e : c.per_k) {
    Json row;
    row["k"] = e.k;
    row["B"] = set_to_json(e.B);
    row["C"] = set_to_json(e.C);
    row["c_includes_exit_tail"] = e.c_includes_exit_tail;
    row["measured"] = measured_to_json(e.measured);
    per.push_back(std::move(row));
  }
  j["per_k"] = std::move(per);
  return j;
}

Json runaway_certificate_to_json(const RunAwayCertificate& c) {
  Json j;
  j["epsilon"] = rat_to_json(c.epsilon);
  j["k"] = c.k;
  j["B"] = set_to_json(c.B);
  j["mu_complement"] = rat_to_json(c.mu_complement);
  return j;
}

Json horizon_to_json(const HorizonStamp& h) {
  Json j;
  j["k_max"] = h.k_max;
  j["window_size"] = h.window_size;
  j["tail_mass"] = opt_rat(h.tail_mass);
  j["preimage_tail_bound"] = opt_rat(h.preimage_tail_bound);
  return j;
}

std::string fingerprint(const models::BuiltSystem& sys) {
  std::string canon = system_to_json(sys).dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string double_repr(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace copdyn
