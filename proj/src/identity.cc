// Copyright 2026 The Yahtzee Authors
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

#include "yahtzee/identity.h"

#include <openssl/evp.h>

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <memory>

#include "fmt/format.h"
#include "yahtzee/errors.h"

namespace yahtzee {

namespace {

using Digest = std::array<unsigned char, 32>;

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

// One reusable digest context per thread; hashing runs inside OpenMP loops.
EVP_MD_CTX* ThreadDigestContext() {
  thread_local std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  return ctx.get();
}

Digest Sha256(std::string_view prefix, std::string_view data) {
  EVP_MD_CTX* ctx = ThreadDigestContext();
  Digest out{};
  unsigned int len = 0;
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, prefix.data(), prefix.size()) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
    throw std::runtime_error("SHA-256 evaluation failed");
  }
  return out;
}

bool IsNameByte(unsigned char c) {
  return c != '|' && !std::isspace(c) && c != '\0';
}

void ValidateName(std::string_view name, std::string_view which) {
  if (name.empty()) {
    throw Error(ErrorCode::kInvalidIdentity, fmt::format("empty {}", which));
  }
  for (unsigned char c : name) {
    if (!IsNameByte(c)) {
      throw Error(ErrorCode::kInvalidIdentity,
                  fmt::format("{} '{}' contains a separator", which, name));
    }
  }
}

int ParseInt(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidIdentity,
                fmt::format("bad {} '{}'", what, s));
  }
  return v;
}

}  // namespace

CanonicalIdentity CanonicalIdentity::Create(std::string first_name,
                                            std::string last_name,
                                            int birth_day, int birth_month,
                                            int birth_year) {
  ValidateName(first_name, "first name");
  ValidateName(last_name, "last name");
  if (birth_year < 1000 || birth_year > 9999) {
    throw Error(ErrorCode::kInvalidIdentity,
                fmt::format("birth year {} is not 4 digits", birth_year));
  }
  const std::chrono::year_month_day date{
      std::chrono::year{birth_year},
      std::chrono::month{static_cast<unsigned>(birth_month)},
      std::chrono::day{static_cast<unsigned>(birth_day)}};
  if (birth_day < 1 || birth_day > 31 || birth_month < 1 ||
      birth_month > 12 || !date.ok()) {
    throw Error(ErrorCode::kInvalidIdentity,
                fmt::format("invalid birth date {}-{}-{}", birth_day,
                            birth_month, birth_year));
  }
  CanonicalIdentity id;
  id.first_name_ = std::move(first_name);
  id.last_name_ = std::move(last_name);
  id.birth_day_ = birth_day;
  id.birth_month_ = birth_month;
  id.birth_year_ = birth_year;
  return id;
}

CanonicalIdentity CanonicalIdentity::Parse(std::string_view serialized) {
  const auto bar1 = serialized.find('|');
  const auto bar2 = bar1 == std::string_view::npos
                        ? std::string_view::npos
                        : serialized.find('|', bar1 + 1);
  if (bar2 == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidIdentity,
                fmt::format("malformed identity '{}'", serialized));
  }
  const std::string_view date = serialized.substr(bar2 + 1);
  if (date.size() != 10 || date[2] != '-' || date[5] != '-') {
    throw Error(ErrorCode::kInvalidIdentity,
                fmt::format("malformed date in '{}'", serialized));
  }
  return Create(std::string(serialized.substr(0, bar1)),
                std::string(serialized.substr(bar1 + 1, bar2 - bar1 - 1)),
                ParseInt(date.substr(0, 2), "day"),
                ParseInt(date.substr(3, 2), "month"),
                ParseInt(date.substr(6, 4), "year"));
}

std::string CanonicalIdentity::Serialize() const {
  return fmt::format("{}|{}|{:02d}-{:02d}-{:04d}", first_name_, last_name_,
                     birth_day_, birth_month_, birth_year_);
}

std::string CanonicalizeToken(std::string_view token) {
  while (!token.empty() && (token.back() == ',' || token.back() == '.')) {
    token.remove_suffix(1);
  }
  std::string out(token);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::toupper(u));
  }
  return out;
}

NameTokens CanonicalizeName(std::string_view raw_name) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < raw_name.size()) {
    while (i < raw_name.size() &&
           std::isspace(static_cast<unsigned char>(raw_name[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < raw_name.size() &&
           !std::isspace(static_cast<unsigned char>(raw_name[i]))) {
      ++i;
    }
    if (i > start) tokens.push_back(raw_name.substr(start, i - start));
  }
  if (tokens.size() < 2) {
    throw Error(ErrorCode::kEmptyName,
                fmt::format("name '{}' has fewer than two tokens", raw_name));
  }
  NameTokens out{CanonicalizeToken(tokens.front()),
                 CanonicalizeToken(tokens.back())};
  if (out.first_name.empty() || out.last_name.empty()) {
    throw Error(ErrorCode::kEmptyName,
                fmt::format("name '{}' reduces to an empty token", raw_name));
  }
  return out;
}

RoundSeed RoundSeed::Derive(std::uint64_t master_seed,
                            std::uint64_t round_index) {
  return RoundSeed{round_index,
                   Sha256Hex(fmt::format("yahtzee/round/{}/{}", master_seed,
                                         round_index))};
}

RoundSeed RoundSeed::ForEstimation(std::uint64_t master_seed) {
  return RoundSeed{0, Sha256Hex(fmt::format("yahtzee/estimate/{}",
                                            master_seed))};
}

std::string RoundSeed::Label() const { return salt.substr(0, 16); }

std::string Sha256Hex(std::string_view data) {
  static constexpr char kHex[] = "0123456789abcdef";
  const Digest d = Sha256({}, data);
  std::string out(d.size() * 2, '0');
  for (std::size_t i = 0; i < d.size(); ++i) {
    out[2 * i] = kHex[d[i] >> 4];
    out[2 * i + 1] = kHex[d[i] & 0x0f];
  }
  return out;
}

HashValue IdentityHash(std::string_view serialized_identity,
                       std::string_view salt) {
  const Digest d = Sha256(salt, serialized_identity);
  // The last 7 hex characters are the low 28 bits of the final 4 bytes.
  const std::uint32_t tail = (std::uint32_t{d[28]} << 24) |
                             (std::uint32_t{d[29]} << 16) |
                             (std::uint32_t{d[30]} << 8) | std::uint32_t{d[31]};
  return HashValue{tail & (kHashModulus - 1)};
}

HashValue IdentityHash(const CanonicalIdentity& id, const RoundSeed& seed) {
  return IdentityHash(id.Serialize(), seed.salt);
}

}  // namespace yahtzee
