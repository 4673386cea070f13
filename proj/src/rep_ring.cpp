#include "equitree/rep_ring.hpp"

#include <cctype>
#include <limits>

namespace equitree {

VirtualRep::VirtualRep(Int order, Int trivial) : order_(order), trivial_(trivial) {
  if (order <= 0) throw DomainError("representation order must be positive");
}

VirtualRep VirtualRep::character(Int order, Int k, Int mult) {
  VirtualRep r(order);
  r.add_char(k, mult);
  return r;
}

Int VirtualRep::multiplicity(Int k) const {
  auto it = chars_.find(mod(k, order_));
  return it == chars_.end() ? 0 : it->second;
}

VirtualRep& VirtualRep::add_trivial(Int n) {
  trivial_ += n;
  return *this;
}

VirtualRep& VirtualRep::add_char(Int k, Int mult) {
  if (mult == 0) return *this;
  Int e = mod(k, order_);
  if (e == 0) {
    trivial_ += 2 * mult;
    return *this;
  }
  Int& slot = chars_[e];
  slot += mult;
  if (slot == 0) chars_.erase(e);
  return *this;
}

VirtualRep& VirtualRep::operator+=(const VirtualRep& other) {
  if (other.order_ != order_) throw DomainError("adding representations of different groups");
  trivial_ += other.trivial_;
  for (auto [k, n] : other.chars_) add_char(k, n);
  return *this;
}

VirtualRep& VirtualRep::operator-=(const VirtualRep& other) { return *this += -other; }

VirtualRep VirtualRep::operator-() const {
  VirtualRep r(order_, -trivial_);
  for (auto [k, n] : chars_) r.chars_[k] = -n;
  return r;
}

Int VirtualRep::dim() const {
  Int d = trivial_;
  for (auto [k, n] : chars_) d += 2 * n;
  return d;
}

Int VirtualRep::fixed_dim(Int d) const {
  if (d <= 0 || order_ % d != 0)
    throw DomainError("fixed_dim: " + std::to_string(d) + " does not divide " +
                      std::to_string(order_));
  Int f = trivial_;
  for (auto [k, n] : chars_)
    if (k % d == 0) f += 2 * n;
  return f;
}

VirtualRep VirtualRep::hz_canonical() const {
  VirtualRep r(order_, trivial_);
  for (auto [k, n] : chars_) r.add_char(gcd(k, order_), n);
  return r;
}

VirtualRep VirtualRep::restrict_to(Int d) const {
  if (d <= 0 || order_ % d != 0)
    throw DomainError("restrict_to: " + std::to_string(d) + " does not divide " +
                      std::to_string(order_));
  VirtualRep r(d, trivial_);
  for (auto [k, n] : chars_) r.add_char(k, n);
  return r;
}

bool VirtualRep::is_actual() const {
  if (trivial_ < 0) return false;
  for (auto [k, n] : chars_)
    if (n < 0) return false;
  return true;
}

std::string VirtualRep::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  auto emit = [&out](Int coeff, const std::string& body) {
    if (coeff < 0)
      out += '-';
    else if (!out.empty())
      out += '+';
    Int a = coeff < 0 ? -coeff : coeff;
    if (body.empty()) {
      out += std::to_string(a);
    } else {
      if (a != 1) out += std::to_string(a) + "*";
      out += body;
    }
  };
  for (auto [k, n] : chars_) emit(n, "l^" + std::to_string(k));
  if (trivial_ != 0) emit(trivial_, "");
  return out;
}

RepParseError::RepParseError(const std::string& what, std::size_t offset)
    : std::invalid_argument(what + " at byte " + std::to_string(offset)), offset_(offset) {}

namespace {

class RepParser {
public:
  RepParser(std::string_view text, Int order) : s_(text), rep_(order) {}

  VirtualRep run() {
    skip_ws();
    if (pos_ == s_.size()) throw RepParseError("empty representation", pos_);
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1 : 1;
      skip_ws();
    }
    term(sign);
    for (skip_ws(); pos_ < s_.size(); skip_ws()) {
      char c = peek();
      if (c != '+' && c != '-') throw RepParseError("expected '+' or '-'", pos_);
      take();
      skip_ws();
      term(c == '-' ? -1 : 1);
    }
    return rep_;
  }

private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return s_[pos_++]; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Int number() {
    std::size_t start = pos_;
    Int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (std::numeric_limits<Int>::max() - 9) / 10)
        throw RepParseError("integer too large", start);
      v = v * 10 + (take() - '0');
    }
    if (pos_ == start) throw RepParseError("expected integer", start);
    return v;
  }

  void term(int sign) {
    Int coeff = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      has_coeff = true;
      skip_ws();
      if (peek() != '*') {
        rep_.add_trivial(sign * coeff);
        return;
      }
      take();
      skip_ws();
    }
    if (peek() != 'l') throw RepParseError(has_coeff ? "expected 'l' after '*'" : "expected term", pos_);
    take();
    skip_ws();
    Int exponent = 1;
    if (peek() == '^') {
      take();
      skip_ws();
      int esign = 1;
      if (peek() == '-') {
        take();
        esign = -1;
      }
      exponent = esign * number();
    }
    rep_.add_char(exponent, sign * coeff);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  VirtualRep rep_;
};

}  // namespace

VirtualRep parse_rep(std::string_view text, Int order) { return RepParser(text, order).run(); }

}  // namespace equitree
