// Copyright 2026 The OaaS Authors
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

#include "oaas/model/oai.h"

#include "oaas/common/digest.h"
#include "oaas/common/error.h"

namespace oaas::model {
namespace {

bool IsNameChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
}

class OaiParser {
 public:
  explicit OaiParser(std::string_view s) : s_(s) {}

  OaiRequest Parse() {
    OaiRequest req;
    req.main_object = Name("object id");
    if (Peek(':')) {
      ++pos_;
      req.function = Name("function name");
      Expect('(');
      if (!Peek(')')) {
        while (true) {
          const size_t at = pos_;
          std::string name = Name("argument name");
          Expect('=');
          std::string value = Value();
          if (!req.args.emplace(std::move(name), std::move(value)).second) {
            Fail(at, "duplicate argument");
          }
          if (Peek(',')) {
            ++pos_;
            continue;
          }
          break;
        }
      }
      Expect(')');
    }
    if (Peek('/')) {
      ++pos_;
      req.content_key = Name("content key");
    }
    if (pos_ != s_.size()) Fail(pos_, "unexpected trailing input");
    return req;
  }

 private:
  [[noreturn]] void Fail(size_t at, const std::string& what) const {
    throw Error(ErrorCode::kOaiSyntax,
                what + " at offset " + std::to_string(at),
                {{"offset", at}});
  }

  bool Peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  void Expect(char c) {
    if (!Peek(c)) Fail(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string Name(const char* what) {
    const size_t start = pos_;
    while (pos_ < s_.size() && IsNameChar(s_[pos_])) ++pos_;
    if (pos_ == start) Fail(start, std::string("expected ") + what);
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string Value() {
    const size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')') ++pos_;
    try {
      return PercentDecode(s_.substr(start, pos_ - start));
    } catch (const Error& e) {
      Fail(start + e.details().value("offset", size_t{0}), "bad percent escape");
    }
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

OaiRequest ParseOai(std::string_view expr) { return OaiParser(expr).Parse(); }

std::string PrintOai(const OaiRequest& req) {
  std::string out = req.main_object;
  if (req.function) {
    out += ':';
    out += *req.function;
    out += '(';
    bool first = true;
    for (const auto& [k, v] : req.args) {
      if (!first) out += ',';
      first = false;
      out += k;
      out += '=';
      out += PercentEncode(v, ",)% /?#");
    }
    out += ')';
  }
  if (req.content_key) {
    out += '/';
    out += *req.content_key;
  }
  return out;
}

}  // namespace oaas::model
