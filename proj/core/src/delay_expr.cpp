// Copyright 2026 The spinlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinlab/delay_expr.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "spinlab/errors.hpp"
#include "text_util.hpp"

namespace spinlab {

DelayExpr DelayExpr::seconds(double s) {
  DelayExpr e;
  e.constant_ = s;
  return e;
}

DelayExpr DelayExpr::coupling_fraction(long long numerator, long long denominator, SpinPair pair) {
  if (denominator <= 0) throw ArgumentError("delay term denominator must be positive");
  DelayExpr e;
  e.terms_.push_back({numerator, denominator, pair});
  return e;
}

double DelayExpr::evaluate(const SpinSystem& sys) const {
  double v = constant_;
  for (const auto& t : terms_) {
    if (t.pair.second > sys.size()) {
      throw ArgumentError("J(" + std::to_string(t.pair.first) + "," + std::to_string(t.pair.second) +
                          ") does not exist in a " + std::to_string(sys.size()) + "-spin system");
    }
    const double j = sys.coupling(t.pair.first, t.pair.second);
    if (j == 0.0) {
      throw ArgumentError("J(" + std::to_string(t.pair.first) + "," + std::to_string(t.pair.second) +
                          ") is zero; the delay cannot be resolved");
    }
    v += static_cast<double>(t.numerator) / (static_cast<double>(t.denominator) * j);
  }
  return v;
}

double DelayExpr::evaluate() const {
  if (is_symbolic()) throw ArgumentError("symbolic delay needs a molecule: " + to_string());
  return constant_;
}

DelayExpr DelayExpr::scaled(long long num, long long den) const {
  if (den <= 0) throw ArgumentError("scale denominator must be positive");
  DelayExpr e;
  e.constant_ = constant_ * static_cast<double>(num) / static_cast<double>(den);
  for (auto t : terms_) {
    t.numerator *= num;
    t.denominator *= den;
    const long long g = std::gcd(t.numerator, t.denominator);
    if (g > 1) {
      t.numerator /= g;
      t.denominator /= g;
    }
    e.terms_.push_back(t);
  }
  return e;
}

DelayExpr DelayExpr::normalized() const {
  DelayExpr e;
  e.constant_ = constant_;
  for (const auto& t : terms_) {
    auto it = std::find_if(e.terms_.begin(), e.terms_.end(), [&](const DelayTerm& o) { return o.pair == t.pair; });
    if (it == e.terms_.end()) {
      e.terms_.push_back(t);
      continue;
    }
    const long long lcm = std::lcm(it->denominator, t.denominator);
    it->numerator = it->numerator * (lcm / it->denominator) + t.numerator * (lcm / t.denominator);
    it->denominator = lcm;
  }
  std::erase_if(e.terms_, [](const DelayTerm& t) { return t.numerator == 0; });
  for (auto& t : e.terms_) {
    const long long g = std::gcd(t.numerator, t.denominator);
    if (g > 1) {
      t.numerator /= g;
      t.denominator /= g;
    }
  }
  return e;
}

DelayExpr DelayExpr::operator-() const {
  DelayExpr e = *this;
  e.constant_ = -e.constant_;
  for (auto& t : e.terms_) t.numerator = -t.numerator;
  return e;
}

DelayExpr operator+(const DelayExpr& a, const DelayExpr& b) {
  DelayExpr e = a;
  e.constant_ += b.constant_;
  e.terms_.insert(e.terms_.end(), b.terms_.begin(), b.terms_.end());
  return e;
}

std::string DelayExpr::to_string() const {
  std::string out;
  bool first = true;
  auto emit = [&](bool negative, const std::string& body) {
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += body;
    first = false;
  };
  if (constant_ != 0.0 || terms_.empty()) emit(constant_ < 0.0, detail::format_shortest(std::abs(constant_)));
  for (const auto& t : terms_) {
    const std::string j = "J(" + std::to_string(t.pair.first) + "," + std::to_string(t.pair.second) + ")";
    const std::string num = std::to_string(t.numerator < 0 ? -t.numerator : t.numerator);
    emit(t.numerator < 0, t.denominator == 1 ? num + "/" + j : num + "/(" + std::to_string(t.denominator) + "*" + j + ")");
  }
  return out;
}

namespace {

class ExprScanner {
 public:
  explicit ExprScanner(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_j() {
    skip_ws();
    return pos_ < s_.size() && (s_[pos_] == 'J' || s_[pos_] == 'j');
  }
  std::string_view number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        ++pos_;
      } else if ((c == 'e' || c == 'E') && pos_ > start) {
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a number");
    return s_.substr(start, pos_ - start);
  }
  long long integer() {
    const auto tok = number();
    const auto v = detail::parse_int(tok);
    if (!v) fail("expected an integer, got '" + std::string(tok) + "'");
    return *v;
  }
  SpinPair j_ref() {
    skip_ws();
    if (!peek_j()) fail("expected J(i,j)");
    ++pos_;
    expect('(');
    const long long i = integer();
    expect(',');
    const long long j = integer();
    expect(')');
    try {
      return SpinPair(static_cast<int>(i), static_cast<int>(j));
    } catch (const ArgumentError&) {
      fail("invalid coupling reference J(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(0, "delay expression '" + std::string(s_) + "': " + msg);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

DelayExpr DelayExpr::parse(std::string_view text) {
  ExprScanner sc(text);
  if (sc.done()) sc.fail("empty");
  DelayExpr e;
  bool first = true;
  while (!sc.done()) {
    bool negative = false;
    if (!first) {
      if (sc.accept('-')) {
        negative = true;
      } else if (!sc.accept('+')) {
        sc.fail("expected '+' or '-' between terms");
      }
    } else if (sc.accept('-')) {
      negative = true;
    }
    first = false;

    const auto num_text = sc.number();
    if (sc.accept('/')) {
      const auto num = detail::parse_int(num_text);
      if (!num) sc.fail("numerator of a coupling term must be an integer");
      long long den = 1;
      SpinPair pair;
      if (sc.accept('(')) {
        den = sc.integer();
        sc.expect('*');
        pair = sc.j_ref();
        sc.expect(')');
      } else {
        pair = sc.j_ref();
      }
      if (den <= 0) sc.fail("denominator must be positive");
      e.terms_.push_back({negative ? -*num : *num, den, pair});
    } else {
      const auto v = detail::parse_double(num_text);
      if (!v) sc.fail("malformed number '" + std::string(num_text) + "'");
      e.constant_ += negative ? -*v : *v;
    }
  }
  return e;
}

}  // namespace spinlab
