#include "msym/ncalg.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace msym {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw Error(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> vertex_names, std::vector<IndexPair> index_set,
                   std::string symbol, bool show_labels)
    : vertex_names_(std::move(vertex_names)),
      index_set_(std::move(index_set)),
      symbol_(std::move(symbol)),
      show_labels_(show_labels) {
  for (std::size_t k = 0; k < index_set_.size(); ++k) {
    if (index_set_[k].vertex >= vertex_names_.size())
      throw Error(ErrorKind::InvalidArgument, "index pair references unknown vertex");
    if (!lookup_.emplace(index_set_[k], k).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate index pair");
  }
}

std::optional<std::size_t> Alphabet::index_of(const IndexPair& p) const {
  auto it = lookup_.find(p);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<GenId> Alphabet::generator(const IndexPair& row, const IndexPair& col) const {
  auto r = index_of(row);
  auto c = index_of(col);
  if (!r || !c) return std::nullopt;
  return generator(*r, *c);
}

std::string Alphabet::index_name(std::size_t k) const {
  const auto& p = index_set_.at(k);
  if (!show_labels_) return vertex_names_[p.vertex];
  return vertex_names_[p.vertex] + "," + std::to_string(p.label);
}

std::string Alphabet::generator_name(GenId g) const {
  return symbol_ + "[" + index_name(row_of(g)) + "|" + index_name(col_of(g)) + "]";
}

GenId Alphabet::parse_generator(std::string_view text) const {
  auto fail = [&] { return Error(ErrorKind::ParseError, "bad generator '" + std::string(text) + "'"); };
  if (text.size() < symbol_.size() + 3 || text.substr(0, symbol_.size()) != symbol_ ||
      text[symbol_.size()] != '[' || text.back() != ']')
    throw fail();
  const auto body = text.substr(symbol_.size() + 1, text.size() - symbol_.size() - 2);
  const auto bar = body.find('|');
  if (bar == std::string_view::npos) throw fail();
  auto pair_of = [&](std::string_view s) -> std::size_t {
    std::string_view vname = s;
    Label label = 1;
    if (show_labels_) {
      const auto comma = s.rfind(',');
      if (comma == std::string_view::npos) throw fail();
      vname = s.substr(0, comma);
      const auto ls = s.substr(comma + 1);
      auto [ptr, ec] = std::from_chars(ls.data(), ls.data() + ls.size(), label);
      if (ec != std::errc() || ptr != ls.data() + ls.size()) throw fail();
    }
    auto it = std::find(vertex_names_.begin(), vertex_names_.end(), vname);
    if (it == vertex_names_.end()) throw fail();
    auto k = index_of({static_cast<VertexIndex>(it - vertex_names_.begin()), label});
    if (!k) throw fail();
    return *k;
  };
  return generator(pair_of(body.substr(0, bar)), pair_of(body.substr(bar + 1)));
}

// ---------------------------------------------------------------------------
// NCPolynomial

NCPolynomial NCPolynomial::unit(AlphabetPtr ambient, Rational c) {
  return monomial(std::move(ambient), Word{}, c);
}

NCPolynomial NCPolynomial::generator(AlphabetPtr ambient, GenId g, Rational c) {
  return monomial(std::move(ambient), Word{g}, c);
}

NCPolynomial NCPolynomial::monomial(AlphabetPtr ambient, Word w, Rational c) {
  NCPolynomial p(std::move(ambient));
  p.add_term(w, c);
  return p;
}

std::size_t NCPolynomial::max_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

Rational NCPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

NCPolynomial NCPolynomial::from_terms(AlphabetPtr ambient, std::vector<std::pair<Word, Rational>> terms) {
  NCPolynomial out(std::move(ambient));
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return WordOrder{}(a.first, b.first); });
  for (std::size_t i = 0; i < terms.size();) {
    auto j = i;
    Rational c = 0;
    for (; j < terms.size() && terms[j].first == terms[i].first; ++j) c += terms[j].second;
    if (c != Rational(0)) out.terms_.emplace_hint(out.terms_.end(), std::move(terms[i].first), c);
    i = j;
  }
  return out;
}

void NCPolynomial::add_term(const Word& w, const Rational& c) {
  if (c == Rational(0)) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

void NCPolynomial::adopt(const NCPolynomial& other) {
  if (!other.ambient_) return;
  if (!ambient_) {
    ambient_ = other.ambient_;
  } else if (ambient_ != other.ambient_ && !(*ambient_ == *other.ambient_)) {
    throw Error(ErrorKind::MixedAmbient, "polynomials over different generator sets");
  }
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& other) {
  adopt(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& other) {
  adopt(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Rational& c) {
  if (c == Rational(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out(a.ambient_);
  out.adopt(b);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& q) { return p * q; }

NCPolynomial adjoint(const NCPolynomial& p) {
  NCPolynomial out(p.ambient());
  for (const auto& [w, c] : p.terms()) out.add_term(Word(w.rbegin(), w.rend()), c);
  return out;
}

std::string NCPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += msym::to_string(c);
    for (auto g : w) {
      out += '*';
      out += ambient_ ? ambient_->generator_name(g) : "g" + std::to_string(g);
    }
  }
  return out;
}

NCPolynomial NCPolynomial::parse(AlphabetPtr ambient, std::string_view text) {
  NCPolynomial p(ambient);
  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\n");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
  };
  text = trim(text);
  if (text == "0") return p;
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
  std::size_t start = 0;
  while (start <= text.size()) {
    auto sep = text.find(" + ", start);
    auto term = trim(text.substr(start, sep == std::string_view::npos ? std::string_view::npos
                                                                      : sep - start));
    auto star = term.find('*');
    Rational c = parse_rational(trim(term.substr(0, star)));
    Word w;
    while (star != std::string_view::npos) {
      auto next = term.find('*', star + 1);
      auto factor = trim(term.substr(star + 1, next == std::string_view::npos ? std::string_view::npos
                                                                              : next - star - 1));
      w.push_back(ambient->parse_generator(factor));
      star = next;
    }
    p.add_term(w, c);
    if (sep == std::string_view::npos) break;
    start = sep + 3;
  }
  return p;
}

// ---------------------------------------------------------------------------
// RuleSet

RuleSet::RuleSet(AlphabetPtr alphabet)
    : alphabet_(std::move(alphabet)),
      stride_(alphabet_->generator_count()),
      extra_(stride_ * stride_, false),
      partners_(alphabet_->index_count()) {
  const auto n = alphabet_->index_count();
  for (std::size_t k = 0; k < n; ++k) {
    NCPolynomial row(alphabet_), col(alphabet_);
    for (std::size_t x = 0; x < n; ++x) {
      row.add_term(Word{alphabet_->generator(k, x)}, 1);
      col.add_term(Word{alphabet_->generator(x, k)}, 1);
    }
    row -= NCPolynomial::unit(alphabet_);
    col -= NCPolynomial::unit(alphabet_);
    linear_.push_back({"row-sum " + alphabet_->index_name(k), std::move(row)});
    linear_.push_back({"col-sum " + alphabet_->index_name(k), std::move(col)});
  }
}

bool RuleSet::magic_pair(GenId g, GenId h) const {
  if (g == h) return false;
  return alphabet_->row_of(g) == alphabet_->row_of(h) || alphabet_->col_of(g) == alphabet_->col_of(h);
}

bool RuleSet::vanishes(GenId g, GenId h) const { return magic_pair(g, h) || extra_pair(g, h); }

void RuleSet::add_vanishing(GenId g, GenId h) {
  auto ref = extra_[static_cast<std::size_t>(g) * stride_ + h];
  if (!ref) {
    ref = true;
    ++extra_count_;
  }
}

std::vector<GenId> RuleSet::members(const Family& f) const {
  std::vector<GenId> out;
  const auto n = alphabet_->index_count();
  for (std::size_t x = 0; x < n; ++x)
    out.push_back(f.kind == FamilyKind::Row ? alphabet_->generator(f.index, x)
                                            : alphabet_->generator(x, f.index));
  return out;
}

std::string RuleSet::family_name(const Family& f) const {
  return std::string(f.kind == FamilyKind::Row ? "row(" : "col(") + alphabet_->index_name(f.index) + ")";
}

void RuleSet::add_column_partner(std::size_t c, std::size_t partner) {
  auto& v = partners_.at(c);
  if (std::find(v.begin(), v.end(), partner) == v.end()) {
    v.push_back(partner);
    std::sort(v.begin(), v.end());
  }
}

std::optional<Word> reduce_word(const Word& input, const RuleSet& rules) {
  for (auto g : input)
    if (rules.extra_pair(g, g)) return std::nullopt;  // g = g*g = 0
  Word w = input;
  std::size_t i = 0;
  while (i + 1 < w.size()) {
    if (w[i] == w[i + 1]) {
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      i = 0;
    } else if (rules.vanishes(w[i], w[i + 1])) {
      return std::nullopt;
    } else {
      ++i;
    }
  }
  return w;
}

NCPolynomial reduce(const NCPolynomial& p, const RuleSet& rules) {
  std::vector<std::pair<Word, Rational>> terms;
  terms.reserve(p.size());
  for (const auto& [w, c] : p.terms())
    if (auto r = reduce_word(w, rules)) terms.emplace_back(std::move(*r), c);
  return NCPolynomial::from_terms(p.ambient() ? p.ambient() : rules.alphabet(), std::move(terms));
}

NCPolynomial family_sum(const RuleSet& rules, const Family& f) {
  NCPolynomial out(rules.alphabet());
  for (auto g : rules.members(f)) out.add_term(Word{g}, 1);
  return out;
}

}  // namespace msym
