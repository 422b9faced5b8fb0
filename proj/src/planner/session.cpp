// Copyright 2026 The Junction Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "junction/planner/session.hpp"

#include <chrono>

#include "junction/common/error.hpp"
#include "junction/io/report_json.hpp"

namespace junction::planner {

namespace {

Reply error_reply(int status, const std::string& message, const std::string& path = {},
                  const std::string& rule = {}) {
  Reply r;
  r.status = status;
  r.body["error"] = message;
  if (!path.empty()) r.body["path"] = path;
  if (!rule.empty()) r.body["rule"] = rule;
  return r;
}

// Thrown inside patch parsing; becomes a 422.
struct PatchError {
  std::string path;
  std::string rule;
};

double patch_number(const Json& obj, const char* key, const std::string& path) {
  const Json& v = obj.at(key);
  if (!v.is_number()) throw PatchError{path + "/" + key, "expected a number"};
  return v.get<double>();
}

void apply_patch(geometry::CameraModel& cam, const Json& patch, const std::string& path) {
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string& key = it.key();
    if (key == "version") continue;
    if (key == "max_range_m") {
      cam.max_range_m = patch_number(patch, "max_range_m", path);
    } else if (key == "pose") {
      const Json& p = it.value();
      const std::string pp = path + "/pose";
      if (!p.is_object()) throw PatchError{pp, "expected an object"};
      for (auto f = p.begin(); f != p.end(); ++f) {
        if (f.key() == "position_m") {
          const Json& v = f.value();
          if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
            throw PatchError{pp + "/position_m", "expected [x, y, z]"};
          }
          cam.pose.position_m = Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
        } else if (f.key() == "yaw_deg") {
          cam.pose.yaw_rad = geometry::deg_to_rad(patch_number(p, "yaw_deg", pp));
        } else if (f.key() == "pitch_deg") {
          cam.pose.pitch_rad = geometry::deg_to_rad(patch_number(p, "pitch_deg", pp));
        } else if (f.key() == "roll_deg") {
          cam.pose.roll_rad = geometry::deg_to_rad(patch_number(p, "roll_deg", pp));
        } else {
          throw PatchError{pp + "/" + f.key(), "unknown field"};
        }
      }
    } else if (key == "intrinsics") {
      const Json& k = it.value();
      const std::string kp = path + "/intrinsics";
      if (!k.is_object()) throw PatchError{kp, "expected an object"};
      for (auto f = k.begin(); f != k.end(); ++f) {
        const std::string& n = f.key();
        if (n == "width_px" || n == "height_px") {
          if (!f.value().is_number_integer()) throw PatchError{kp + "/" + n, "expected an integer"};
          (n == "width_px" ? cam.intrinsics.width_px : cam.intrinsics.height_px) = f.value().get<int>();
        } else if (n == "fx_px") {
          cam.intrinsics.fx_px = patch_number(k, "fx_px", kp);
        } else if (n == "fy_px") {
          cam.intrinsics.fy_px = patch_number(k, "fy_px", kp);
        } else if (n == "cx_px") {
          cam.intrinsics.cx_px = patch_number(k, "cx_px", kp);
        } else if (n == "cy_px") {
          cam.intrinsics.cy_px = patch_number(k, "cy_px", kp);
        } else {
          throw PatchError{kp + "/" + n, "unknown field"};
        }
      }
    } else {
      throw PatchError{path + "/" + key, "unknown field"};
    }
  }
}

}  // namespace

const char* to_string(JobState s) {
  switch (s) {
    case JobState::kIdle: return "idle";
    case JobState::kRunning: return "running";
    case JobState::kDone: return "done";
    case JobState::kCancelled: return "cancelled";
  }
  return "?";
}

Session::Session(io::ScenarioDocument doc, SessionOptions options)
    : options_(std::move(options)), doc_(std::move(doc)) {}

Session::~Session() {
  std::lock_guard start_lock(start_mutex_);
  {
    std::lock_guard lock(mutex_);
    ++next_job_;  // any running job sees itself superseded
  }
  join_worker();
}

void Session::set_event_sink(std::function<void(const std::string&)> sink) {
  std::lock_guard lock(sink_mutex_);
  sink_ = std::move(sink);
}

void Session::emit(const Json& event) {
  const std::string text = event.dump();
  std::lock_guard lock(sink_mutex_);
  if (sink_) sink_(text);
}

std::uint64_t Session::version() const {
  std::lock_guard lock(mutex_);
  return version_;
}

scene::Scenario Session::scenario() const {
  std::lock_guard lock(mutex_);
  return doc_.scenario;
}

Reply Session::get_scenario() const {
  std::lock_guard lock(mutex_);
  Reply r;
  r.body["version"] = version_;
  r.body["document"] = parse_json(io::serialize_document(doc_));
  return r;
}

Reply Session::patch_camera(int camera_id, const Json& patch) {
  std::uint64_t new_version = 0;
  {
    std::lock_guard lock(mutex_);
    auto& cams = doc_.scenario.cameras;
    std::size_t index = cams.size();
    for (std::size_t i = 0; i < cams.size(); ++i) {
      if (cams[i].id == camera_id) index = i;
    }
    if (index == cams.size()) return error_reply(404, "unknown camera " + std::to_string(camera_id));
    if (!patch.is_object()) return error_reply(422, "patch must be an object", "", "expected an object");
    if (const auto v = patch.find("version"); v != patch.end()) {
      if (!v->is_number_unsigned() && !v->is_number_integer()) {
        return error_reply(422, "version must be an integer", "version", "expected an integer");
      }
      if (v->get<std::uint64_t>() != version_) {
        Reply r = error_reply(409, "stale version " + v->dump() + ", current is " + std::to_string(version_));
        r.body["version"] = version_;
        return r;
      }
    }
    scene::Scenario edited = doc_.scenario;
    const std::string path = "scenario/cameras/" + std::to_string(index);
    try {
      apply_patch(edited.cameras[index], patch, path);
    } catch (const PatchError& e) {
      return error_reply(422, e.rule, e.path, e.rule);
    }
    const auto violations = scene::validate_scenario(edited);
    if (!violations.empty()) {
      return error_reply(422, violations.front().rule, violations.front().entity, violations.front().rule);
    }
    doc_.scenario = std::move(edited);
    new_version = ++version_;
  }
  emit({{"type", "version_changed"}, {"version", new_version}});
  Reply r;
  r.body["version"] = new_version;
  return r;
}

Reply Session::start_recompute() {
  std::lock_guard start_lock(start_mutex_);
  std::uint64_t job_id = 0;
  std::uint64_t version = 0;
  scene::Scenario snapshot;
  {
    std::lock_guard lock(mutex_);
    job_id = next_job_++;
    version = version_;
    snapshot = doc_.scenario;
    job_ = {job_id, JobState::kRunning, 0.0, version};
  }
  // The superseded job notices the new id at its next row and stops.
  join_worker();
  worker_ = std::thread([this, job_id, snapshot = std::move(snapshot), version]() mutable {
    run_job(job_id, std::move(snapshot), version);
  });
  Reply r;
  r.status = 202;
  r.body = {{"job_id", job_id}, {"version", version}};
  return r;
}

void Session::join_worker() {
  if (worker_.joinable()) worker_.join();
}

void Session::run_job(std::uint64_t job_id, scene::Scenario snapshot, std::uint64_t version) {
  const auto current = [&] {
    std::lock_guard lock(mutex_);
    return next_job_ == job_id + 1;
  };
  coverage::CoverageOptions opt;
  opt.constraints = options_.constraints;
  opt.threads = options_.threads;
  int last_percent = -1;
  opt.progress = [&](int done, int total) {
    if (options_.row_hook) options_.row_hook(done);
    if (!current()) return false;
    const int percent = total > 0 ? 100 * done / total : 100;
    if (percent != last_percent) {
      last_percent = percent;
      {
        std::lock_guard lock(mutex_);
        job_.progress = total > 0 ? static_cast<double>(done) / total : 1.0;
      }
      emit({{"type", "job_progress"}, {"job_id", job_id}, {"version", version}, {"progress", percent / 100.0}});
    }
    return true;
  };

  std::optional<GridSnapshot> result;
  std::string failure;
  try {
    GridSnapshot g;
    g.pairs = coverage::enumerate_stereo_pairs(snapshot, options_.constraints);
    opt.pairs = g.pairs;
    g.grid = coverage::compute_coverage(snapshot, coverage::default_grid_spec(snapshot, options_.cell_m), opt);
    g.metrics = coverage::coverage_report(g.grid, snapshot.layout);
    g.version = version;
    result = std::move(g);
  } catch (const coverage::Cancelled&) {
  } catch (const std::exception& e) {
    failure = e.what();
  }

  Json done = {{"type", "job_done"}, {"job_id", job_id}, {"version", version}};
  {
    std::lock_guard lock(mutex_);
    const bool superseded = next_job_ != job_id + 1;
    if (result && !superseded) {
      if (!grid_ || grid_->version <= version) grid_ = std::move(result);
      job_ = {job_id, JobState::kDone, 1.0, version};
      done["status"] = "done";
    } else if (!failure.empty() && !superseded) {
      job_ = {job_id, JobState::kIdle, 0.0, version};
      done["status"] = "failed";
      done["error"] = failure;
    } else {
      done["status"] = "cancelled";
      if (job_.job_id == job_id) job_.state = JobState::kCancelled;
    }
  }
  idle_cv_.notify_all();
  emit(done);
}

Reply Session::get_pairs() const {
  scene::Scenario s;
  std::uint64_t v = 0;
  {
    std::lock_guard lock(mutex_);
    s = doc_.scenario;
    v = version_;
  }
  Reply r;
  r.body["version"] = v;
  r.body["pairs"] = io::pairs_json(coverage::enumerate_stereo_pairs(s, options_.constraints));
  return r;
}

JobStatus Session::job() const {
  std::lock_guard lock(mutex_);
  return job_;
}

std::optional<GridSnapshot> Session::latest_grid() const {
  std::lock_guard lock(mutex_);
  return grid_;
}

bool Session::wait_idle(double timeout_s) const {
  std::unique_lock lock(mutex_);
  return idle_cv_.wait_for(lock, std::chrono::duration<double>(timeout_s),
                           [&] { return job_.state != JobState::kRunning; });
}

}  // namespace junction::planner
