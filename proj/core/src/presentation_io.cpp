#include "json.hpp"
#include <sstream>

#include "msym/presentation.hpp"

namespace msym {

using nlohmann::json;

namespace {

json alphabet_json(const Alphabet& a) {
  json idx = json::array();
  for (const auto& p : a.index_set()) idx.push_back({p.vertex, p.label});
  return {{"symbol", a.symbol()},
          {"show_labels", a.show_labels()},
          {"vertices", a.vertex_names()},
          {"index_set", std::move(idx)}};
}

AlphabetPtr alphabet_from(const json& j) {
  std::vector<IndexPair> idx;
  for (const auto& p : j.at("index_set")) idx.push_back({p.at(0).get<VertexIndex>(), p.at(1).get<Label>()});
  return std::make_shared<const Alphabet>(j.at("vertices").get<std::vector<std::string>>(), std::move(idx),
                                          j.at("symbol").get<std::string>(), j.at("show_labels").get<bool>());
}

PresentationKind kind_from(const std::string& s) {
  for (auto k : {PresentationKind::Uniform, PresentationKind::NonUniform, PresentationKind::Permissible,
                 PresentationKind::BanicaLift})
    if (to_string(k) == s) return k;
  throw Error(ErrorKind::ParseError, "unknown presentation kind '" + s + "'");
}

VanishingReason reason_from(const std::string& s) {
  for (auto r : {VanishingReason::EmptyArc, VanishingReason::LabelMismatch, VanishingReason::LabelOverflow,
                 VanishingReason::WeightMismatch, VanishingReason::Adjoint})
    if (to_string(r) == s) return r;
  throw Error(ErrorKind::ParseError, "unknown vanishing reason '" + s + "'");
}

}  // namespace

std::string presentation_to_json(const Presentation& p) {
  const auto& a = *p.alphabet();
  const auto& rules = p.rules();
  json j;
  j["kind"] = to_string(p.kind());
  j["alphabet"] = alphabet_json(a);

  json gens = json::array();
  for (GenId g = 0; g < a.generator_count(); ++g) gens.push_back(a.generator_name(g));
  j["generators"] = std::move(gens);

  json vanishing = json::array();
  for (const auto& v : p.vanishing())
    vanishing.push_back({{"left", a.generator_name(v.left)},
                         {"right", a.generator_name(v.right)},
                         {"reason", to_string(v.reason)}});
  j["vanishing_pairs"] = std::move(vanishing);

  json sums = json::array();
  for (std::size_t k = 0; k < a.index_count(); ++k) {
    sums.push_back(rules.family_name({FamilyKind::Row, k}));
    sums.push_back(rules.family_name({FamilyKind::Column, k}));
  }
  j["unit_sums"] = std::move(sums);

  // Unit sums occupy the first 2n relations and are implied by the alphabet.
  const auto& ids = p.label_relation_ids();
  json linear = json::array();
  const auto& rels = rules.linear_relations();
  for (std::size_t r = 2 * a.index_count(); r < rels.size(); ++r) {
    const bool label = std::find(ids.begin(), ids.end(), r) != ids.end();
    linear.push_back({{"name", rels[r].name},
                      {"role", label ? "label-independence" : "other"},
                      {"poly", rels[r].poly.to_string()}});
  }
  j["linear_relations"] = std::move(linear);
  j["label_independence"] = rules.has_label_independence();

  json partners = json::array();
  for (std::size_t c = 0; c < a.index_count(); ++c)
    for (auto q : rules.column_partners(c)) partners.push_back({c, q});
  j["column_partners"] = std::move(partners);

  json subs = json::object();
  if (p.source_alphabet()) {
    subs["source"] = alphabet_json(*p.source_alphabet());
    json table = json::array();
    for (const auto& [from, to] : p.substitutions())
      table.push_back({p.source_alphabet()->generator_name(from), a.generator_name(to)});
    subs["table"] = std::move(table);
  }
  j["substitutions"] = std::move(subs);
  return j.dump(2);
}

PresentationPtr presentation_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("presentation: ") + e.what());
  }
  try {
    auto alphabet = alphabet_from(j.at("alphabet"));
    auto p = std::make_shared<Presentation>(kind_from(j.at("kind").get<std::string>()), alphabet);
    const auto& a = *alphabet;
    for (const auto& v : j.at("vanishing_pairs"))
      p->add_vanishing({a.parse_generator(v.at("left").get<std::string>()),
                        a.parse_generator(v.at("right").get<std::string>()),
                        reason_from(v.at("reason").get<std::string>())});
    for (const auto& r : j.at("linear_relations")) {
      LinearRelation rel{r.at("name").get<std::string>(),
                         NCPolynomial::parse(alphabet, r.at("poly").get<std::string>())};
      if (r.at("role").get<std::string>() == "label-independence") p->add_label_relation(std::move(rel));
      else p->rules().add_linear_relation(std::move(rel));
    }
    p->rules().set_label_independence(j.at("label_independence").get<bool>());
    for (const auto& c : j.at("column_partners"))
      p->rules().add_column_partner(c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>());
    const auto& subs = j.at("substitutions");
    if (subs.contains("source")) {
      auto source = alphabet_from(subs.at("source"));
      std::map<GenId, GenId> table;
      for (const auto& e : subs.at("table"))
        table.emplace(source->parse_generator(e.at(0).get<std::string>()),
                      a.parse_generator(e.at(1).get<std::string>()));
      p->set_substitutions(std::move(source), std::move(table));
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("presentation: ") + e.what());
  }
}

std::string presentation_to_text(const Presentation& p) {
  const auto& a = *p.alphabet();
  const auto& rules = p.rules();
  std::ostringstream os;
  os << "presentation " << to_string(p.kind()) << "\n";
  os << "index set (" << a.index_count() << "):";
  for (std::size_t k = 0; k < a.index_count(); ++k) os << ' ' << a.index_name(k);
  os << "\ngenerators: " << a.generator_count() << " (self-adjoint projections)\n";
  os << "magic: same-row and same-column products of distinct generators vanish\n";
  os << "unit sums: " << 2 * a.index_count() << " rows and columns\n";
  os << "vanishing pairs: " << p.vanishing().size() << "\n";
  for (const auto& v : p.vanishing())
    os << "  " << a.generator_name(v.left) << " * " << a.generator_name(v.right) << " = 0  [" << to_string(v.reason)
       << "]\n";
  const auto& rels = rules.linear_relations();
  os << "linear relations: " << rels.size() - 2 * a.index_count() << "\n";
  for (std::size_t r = 2 * a.index_count(); r < rels.size(); ++r)
    os << "  " << rels[r].name << ": " << rels[r].poly.to_string() << " = 0\n";
  if (p.source_alphabet()) {
    os << "substitutions: " << p.substitutions().size() << " (all other source generators map to 0)\n";
    for (const auto& [from, to] : p.substitutions())
      os << "  " << p.source_alphabet()->generator_name(from) << " -> " << a.generator_name(to) << "\n";
  }
  return os.str();
}

}  // namespace msym
