#pragma once

#include "synthflow/eval/eval.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace httplib {
class Server;
}

namespace synthflow::service {

struct Options {
  std::filesystem::path cache_dir;  // rendered WAVs, named <hash>.wav
  std::string cors_origin = "*";
  int max_neighbors = 64;
  int max_steps = 64;
  int threads = 8;
};

// HTTP front end over one immutable checkpoint.
//
//   GET  /model/info        kind, s, latent dim, semantic pairs, checkpoint hash
//   POST /encode            WAV bytes -> {z}
//   POST /decode            {z} -> {v, clipped}
//   POST /synthesize        {v} -> WAV bytes
//   POST /traverse          {dim, range, steps} -> {steps: [{value, z, v, descriptors, audio_url}]}
//   POST /neighborhood      {z, radius, count, seed} -> {anchor_v, samples: [...]}
//   GET  /audio/<hash>.wav  cached or lazily rendered audio
//
// Every model endpoint answers 503 until an engine is attached. JSON
// responses carry "checkpoint_hash"; every response carries the
// X-Checkpoint-Hash header once loaded.
class Service {
 public:
  explicit Service(std::shared_ptr<eval::Engine> engine, Options options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Attaches the engine once; throws std::logic_error on a second call.
  void attach(std::shared_ptr<eval::Engine> engine);

  // Blocking. Returns false when the address cannot be bound.
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it (or -1); serve with listen_after_bind.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  bool is_running() const;

  // Hash naming the audio of preset v under the engine's manifest and profile.
  std::string audio_key(const eval::Params& v) const;

 private:
  std::shared_ptr<eval::Engine> engine() const;
  void routes();
  // Path of the cached render for `key`, rendering it first when needed.
  std::filesystem::path ensure_audio(const std::string& key, const eval::Params& v);
  std::string register_audio(const eval::Params& v);

  Options options_;
  std::unique_ptr<httplib::Server> server_;
  mutable std::mutex engine_mutex_;
  std::shared_ptr<eval::Engine> engine_;

  std::mutex registry_mutex_;
  std::map<std::string, eval::Params> registry_;           // hash -> preset awaiting a render
  std::map<std::string, std::shared_ptr<std::mutex>> key_locks_;  // one writer per key
};

}  // namespace synthflow::service
