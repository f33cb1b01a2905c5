#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "genergy/json_io.hpp"
#include "genergy/search.hpp"

namespace genergy::explorer {

enum class JobState { running, done, failed };

inline const char* to_string(JobState s) {
  switch (s) {
    case JobState::running: return "running";
    case JobState::done: return "done";
    case JobState::failed: return "failed";
  }
  return "?";
}

struct Job {
  std::string id;
  std::string session;
  std::size_t snapshot = 0;
  json request;
  std::atomic<JobState> state{JobState::running};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> graphs{0};
  std::shared_ptr<std::atomic<bool>> cancel = std::make_shared<std::atomic<bool>>(false);

  // Guarded by the registry mutex once the worker finishes.
  json result;
  std::string error;
  std::string error_kind;
};

/// Realization jobs running on their own threads. Each job reports progress
/// through atomics; on completion the finish callback receives the result.
class JobRegistry {
 public:
  using Finish = std::function<void(const Job&, const json& result)>;

  JobRegistry() = default;
  JobRegistry(const JobRegistry&) = delete;
  JobRegistry& operator=(const JobRegistry&) = delete;

  ~JobRegistry() {
    std::vector<std::thread> threads;
    {
      std::lock_guard lock(mu_);
      for (auto& [id, job] : jobs_) job->cancel->store(true);
      threads.swap(threads_);
    }
    for (auto& t : threads)
      if (t.joinable()) t.join();
  }

  std::string start(std::string session, std::size_t snapshot, json request, SearchSpec spec, Finish finish) {
    auto job = std::make_shared<Job>();
    {
      std::lock_guard lock(mu_);
      job->id = "j" + std::to_string(++counter_);
      jobs_.emplace(job->id, job);
    }
    job->session = std::move(session);
    job->snapshot = snapshot;
    job->request = std::move(request);
    spec.limits.cancel = job->cancel;
    spec.limits.progress = [job](std::uint64_t nodes, std::uint64_t graphs) {
      job->nodes.store(nodes);
      job->graphs.store(graphs);
    };
    std::thread worker([this, job, spec = std::move(spec), finish = std::move(finish)]() mutable {
      json result;
      try {
        auto r = realize_spectrum(spec);
        job->nodes.store(r.nodes_visited);
        job->graphs.store(r.graphs_examined);
        result = search_result_json(r);
      } catch (const Error& e) {
        std::lock_guard lock(mu_);
        job->error = e.what();
        job->error_kind = to_string(e.kind());
        job->state.store(JobState::failed);
        return;
      } catch (const std::exception& e) {
        std::lock_guard lock(mu_);
        job->error = e.what();
        job->error_kind = "internal";
        job->state.store(JobState::failed);
        return;
      }
      if (finish) finish(*job, result);
      std::lock_guard lock(mu_);
      job->result = std::move(result);
      job->state.store(JobState::done);
    });
    std::lock_guard lock(mu_);
    threads_.push_back(std::move(worker));
    return job->id;
  }

  json status(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw Error(ErrorKind::not_found, "no job '" + id + "'");
    const auto& job = *it->second;
    auto state = job.state.load();
    json j = {{"job", job.id},
              {"session", job.session},
              {"snapshot", job.snapshot},
              {"state", to_string(state)},
              {"progress", {{"nodes_visited", job.nodes.load()}, {"graphs_examined", job.graphs.load()}}},
              {"request", job.request}};
    j["result"] = state == JobState::done ? job.result : json(nullptr);
    j["error"] = state == JobState::failed ? json{{"kind", job.error_kind}, {"message", job.error}} : json(nullptr);
    return j;
  }

  /// Blocks until the job leaves the running state.
  json wait(const std::string& id, std::chrono::milliseconds poll = std::chrono::milliseconds(5)) const {
    while (true) {
      auto j = status(id);
      if (j["state"] != "running") return j;
      std::this_thread::sleep_for(poll);
    }
  }

  void cancel(const std::string& id) {
    std::lock_guard lock(mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw Error(ErrorKind::not_found, "no job '" + id + "'");
    it->second->cancel->store(true);
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::thread> threads_;
  std::uint64_t counter_ = 0;
};

}  // namespace genergy::explorer
