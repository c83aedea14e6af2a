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

#include <benchmark/benchmark.h>

#include "algedon/ingest.hpp"
#include "common.hpp"

namespace algedon::bench {
namespace {

// Incremental ingest of named records; argument is the stream length.
void BM_IngestStream(benchmark::State& state) {
  const auto schema = grid_schema(6, 4, 3);
  const auto recs = records(*schema, observations(*schema, static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) {
    EventIngestor ingestor(schema);
    for (const EventRecord& rec : recs) ingestor.ingest(rec);
    benchmark::DoNotOptimize(ingestor.snapshot());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IngestStream)->Arg(1000)->Arg(10000);

// Ingest interleaved with snapshots, as the service does between queries.
void BM_IngestWithSnapshots(benchmark::State& state) {
  const auto schema = grid_schema(6, 4, 3);
  const auto recs = records(*schema, observations(*schema, 2000, 4));
  for (auto _ : state) {
    EventIngestor ingestor(schema);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      ingestor.ingest(recs[i]);
      if (i % static_cast<std::size_t>(state.range(0)) == 0) benchmark::DoNotOptimize(ingestor.snapshot());
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(recs.size()));
}
BENCHMARK(BM_IngestWithSnapshots)->Arg(1)->Arg(100);

// Batch recount for comparison.
void BM_BatchBuild(benchmark::State& state) {
  const auto schema = grid_schema(6, 4, 3);
  const auto rows = observations(*schema, 10000, 5);
  for (auto _ : state) benchmark::DoNotOptimize(store_of(schema, rows));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows.size()));
}
BENCHMARK(BM_BatchBuild);

}  // namespace
}  // namespace algedon::bench
