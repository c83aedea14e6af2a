// Copyright 2026 The Algedon Authors
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

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <unistd.h>

#include "algedon/ingest.hpp"
#include "algedon/json_codec.hpp"

namespace algedon::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(ALGEDON_TEST_DATA_DIR) / name;
}

/// Loads `<name>.schema.json` and `<name>.events.jsonl` from the data directory.
struct Fixture {
  std::shared_ptr<const AttributeSchema> schema;
  IngestResult ingested;

  const CountStore& store() const { return *ingested.store; }
};

inline Fixture load_fixture(const std::string& name) {
  Fixture f;
  f.schema = load_schema(data_path(name + ".schema.json"));
  f.ingested = ingest_file(data_path(name + ".events.jsonl"), f.schema);
  return f;
}

/// A fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline TempDir::TempDir(const std::string& tag) {
  static int counter = 0;
  path_ = std::filesystem::temp_directory_path() /
          ("algedon-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

}  // namespace algedon::testing
