// core/kvconfig.h

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

#ifndef DIARKIT_CORE_KVCONFIG_H_
#define DIARKIT_CORE_KVCONFIG_H_

#include <cstdint>
#include <map>
#include <string>

namespace diarkit {

// Flat `key = value` file; '#' lines and blanks skipped; duplicate keys are
// an error.
std::map<std::string, std::string> ReadKvConfig(const std::string &path);

// Typed lookups with defaults; parse failures name the key.
double KvDouble(const std::map<std::string, std::string> &kv,
                const std::string &key, double fallback);
int KvInt(const std::map<std::string, std::string> &kv,
          const std::string &key, int fallback);
std::uint64_t KvSeed(const std::map<std::string, std::string> &kv,
                     const std::string &key, std::uint64_t fallback);
std::string KvString(const std::map<std::string, std::string> &kv,
                     const std::string &key, const std::string &fallback);

}  // namespace diarkit

#endif  // DIARKIT_CORE_KVCONFIG_H_
