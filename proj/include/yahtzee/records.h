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

#ifndef YAHTZEE_RECORDS_H_
#define YAHTZEE_RECORDS_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "yahtzee/identity.h"

namespace yahtzee {

struct RegistryRecord {
  CanonicalIdentity identity;
  bool voted = false;
};

struct PlatformRecord {
  std::string user_id;
  CanonicalIdentity identity;
  std::string attribute;  // optional grouping key, may be empty
};

struct DropStats {
  std::size_t input_rows = 0;
  std::size_t unparseable = 0;
  std::size_t duplicate = 0;
  std::size_t retained = 0;
};

template <typename Record>
struct LoadedRecords {
  std::vector<Record> records;
  DropStats stats;
};

// Registry CSV: first_name,last_name,birth_day,birth_month,birth_year,voted.
// Rows that fail canonicalization are dropped as unparseable, then duplicate
// identities are dropped entirely. A bad header throws Error(kFileFormat).
LoadedRecords<RegistryRecord> LoadRegistryCsv(std::istream& in);

// Platform CSV: user_id,name,birth_day,birth_month,birth_year[,attribute].
LoadedRecords<PlatformRecord> LoadPlatformCsv(std::istream& in);

// Writers emit the same formats, with canonical names, so a prepared store
// reloads to identical records.
void WriteRegistryCsv(std::ostream& out, std::span<const RegistryRecord> records);
void WritePlatformCsv(std::ostream& out, std::span<const PlatformRecord> records);

// "reason,count" rows.
void WriteDropStats(std::ostream& out, const DropStats& stats);

// Fraction of records with voted = 1. Throws Error(kEmptyRegistry) if empty.
double Turnout(std::span<const RegistryRecord> records);

std::vector<std::string> SerializeIdentities(
    std::span<const RegistryRecord> records);
std::vector<std::string> SerializeIdentities(
    std::span<const PlatformRecord> records);

}  // namespace yahtzee

#endif  // YAHTZEE_RECORDS_H_
