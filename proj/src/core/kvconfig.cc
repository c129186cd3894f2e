// core/kvconfig.cc

// Copyright 2026 diarkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/kvconfig.h"

#include <fstream>

#include "core/error.h"

namespace diarkit {

namespace {

std::string Trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> ReadKvConfig(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": expected 'key = value'");
    }
    std::string key = Trim(t.substr(0, eq));
    std::string value = Trim(t.substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

namespace {

template <typename T, typename Fn>
T KvParse(const std::map<std::string, std::string> &kv,
          const std::string &key, T fallback, Fn parse) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    size_t pos = 0;
    T v = parse(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception &) {
    throw Error(ErrorCode::kParse,
                "bad value '" + it->second + "' for key '" + key + "'");
  }
}

}  // namespace

double KvDouble(const std::map<std::string, std::string> &kv,
                const std::string &key, double fallback) {
  return KvParse<double>(kv, key, fallback,
                         [](const std::string &s, size_t *pos) {
                           return std::stod(s, pos);
                         });
}

int KvInt(const std::map<std::string, std::string> &kv,
          const std::string &key, int fallback) {
  return KvParse<int>(kv, key, fallback,
                      [](const std::string &s, size_t *pos) {
                        return std::stoi(s, pos);
                      });
}

std::uint64_t KvSeed(const std::map<std::string, std::string> &kv,
                     const std::string &key, std::uint64_t fallback) {
  return KvParse<std::uint64_t>(
      kv, key, fallback, [](const std::string &s, size_t *pos) {
        return static_cast<std::uint64_t>(std::stoull(s, pos));
      });
}

std::string KvString(const std::map<std::string, std::string> &kv,
                     const std::string &key, const std::string &fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

}  // namespace diarkit
