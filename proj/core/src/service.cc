// Copyright 2026 The semrel Authors.
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


#include "semrel/service.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include "httplib.h"
#include "json_codec.h"
#include "semrel/alignment.h"
#include "semrel/corpus.h"
#include "semrel/record_codec.h"
#include "semrel/stats.h"

namespace semrel {
namespace {

using json_codec::Json;

ApiError api_error(ApiErrorCode code, std::string detail) {
  ApiError e;
  e.code = code;
  e.detail = std::move(detail);
  return e;
}

ApiError bad_request(std::string detail) {
  return api_error(ApiErrorCode::kBadRequest, std::move(detail));
}

ApiError not_found(std::string detail) {
  return api_error(ApiErrorCode::kNotFound, std::move(detail));
}

ApiError validation_failed(std::string detail, std::vector<AnnotationViolation> violations) {
  ApiError e = api_error(ApiErrorCode::kValidationFailed, std::move(detail));
  e.violations = std::move(violations);
  return e;
}

void send(httplib::Response &res, const Json &body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response &res, const ApiError &e) {
  res.status = e.http_status();
  res.set_content(e.to_json(), "application/json");
}

Json parse_body(const httplib::Request &req) {
  if (req.body.empty()) throw bad_request("request body is empty");
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw bad_request("request body is not a JSON object");
  return j;
}

uint64_t required_version(const Json &body) {
  auto it = body.find("version");
  if (it == body.end() || !it->is_number_unsigned()) {
    throw bad_request("'version' (unsigned integer) is required");
  }
  return it->get<uint64_t>();
}

// Client-supplied Idempotency-Key, else a fingerprint of the request.
std::string mutation_token(const httplib::Request &req) {
  if (req.has_header("Idempotency-Key")) return req.get_header_value("Idempotency-Key");
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string *part : {&req.method, &req.path, &req.body}) {
    for (unsigned char c : *part) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "req-%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Applies {"span", "class", "sense", "term"} keys of a partial mention.
ConceptMention patch_mention(ConceptMention m, const Json &patch) {
  if (!patch.is_object()) throw bad_request("mention patch must be an object");
  Json full = json_codec::to_json(m);
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (it.key() == "sentence") throw bad_request("a mention's sentence cannot be changed");
    if (!full.contains(it.key())) throw bad_request("unknown mention field '" + it.key() + "'");
    full[it.key()] = it.value();
  }
  return json_codec::mention_from_json(full);
}

Json record_list(const std::vector<AnnotationRecord> &records) {
  Json list = Json::array();
  for (const AnnotationRecord &r : records) list.push_back(json_codec::to_json(r));
  return Json{{"count", records.size()}, {"records", std::move(list)}};
}

}  // namespace

std::string_view to_string(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::kNotFound: return "not-found";
    case ApiErrorCode::kConflict: return "conflict";
    case ApiErrorCode::kValidationFailed: return "validation-failed";
    case ApiErrorCode::kBadRequest: return "bad-request";
  }
  return "?";
}

int ApiError::http_status() const {
  switch (code) {
    case ApiErrorCode::kNotFound: return 404;
    case ApiErrorCode::kConflict: return 409;
    case ApiErrorCode::kValidationFailed: return 422;
    case ApiErrorCode::kBadRequest: return 400;
  }
  return 500;
}

std::string ApiError::to_json() const {
  Json j{{"code", semrel::to_string(code)}, {"detail", detail}};
  if (!violations.empty()) j["violations"] = json_codec::to_json(violations);
  if (expected_version) j["expected_version"] = *expected_version;
  if (actual_version) j["actual_version"] = *actual_version;
  return j.dump();
}

struct Service::Impl {
  ServiceConfig config;
  Inventory inventory;
  AlignmentTable alignment;
  std::shared_ptr<const CorpusSnapshot> corpus;
  RecordStore store;
  httplib::Server server;
  ListenAddress address;
  std::atomic<bool> run_entered{false};
  std::atomic<bool> run_finished{false};
  std::atomic<bool> stop_requested{false};

  Impl(const ServiceConfig &cfg, StoreOptions store_options)
      : config(cfg),
        inventory(load_inventory_file(cfg.inventory.string())),
        alignment(load_alignment_file(cfg.alignment.string(), inventory)),
        corpus(std::make_shared<CorpusSnapshot>(load_corpus_dir(cfg.corpus))),
        store(cfg.store, std::move(store_options)),
        address(parse_listen(cfg.listen)) {
    routes();
  }

  void routes();
  void handle(httplib::Response &res, const std::function<void()> &fn);

  AnnotationRecord require_record(const std::string &id) const {
    auto r = store.get(id);
    if (!r) throw not_found("no record '" + id + "'");
    return *r;
  }

  std::vector<AnnotationViolation> check(const AnnotationRecord &r) const {
    return validate_record(r, inventory, corpus.get());
  }

  void get_candidates(const httplib::Request &req, httplib::Response &res);
  void get_alignment(const httplib::Request &req, httplib::Response &res);
  void post_sample(const httplib::Request &req, httplib::Response &res);
  void get_records(const httplib::Request &req, httplib::Response &res);
  void post_record(const httplib::Request &req, httplib::Response &res);
  void patch_record(const httplib::Request &req, httplib::Response &res);
  void post_relatedness(const httplib::Request &req, httplib::Response &res);
  void post_chain_validate(const httplib::Request &req, httplib::Response &res);
  void get_stats(const httplib::Request &req, httplib::Response &res);
};

void Service::Impl::handle(httplib::Response &res, const std::function<void()> &fn) {
  try {
    fn();
  } catch (const ApiError &e) {
    send_error(res, e);
  } catch (const StoreError &e) {
    ApiError api = api_error(ApiErrorCode::kBadRequest, e.what());
    switch (e.kind()) {
      case StoreErrorKind::kNotFound: api.code = ApiErrorCode::kNotFound; break;
      case StoreErrorKind::kConflict:
      case StoreErrorKind::kExists:
        api.code = ApiErrorCode::kConflict;
        api.expected_version = e.expected_version();
        api.actual_version = e.actual_version();
        break;
      default:
        res.status = 500;
        res.set_content(Json{{"code", "internal"}, {"detail", e.what()}}.dump(),
                        "application/json");
        return;
    }
    send_error(res, api);
  } catch (const AnnotationError &e) {
    send_error(res, validation_failed(e.what(), e.violations()));
  } catch (const CodecError &e) {
    send_error(res, bad_request(e.what()));
  } catch (const StatsError &e) {
    send_error(res, bad_request(e.what()));
  } catch (const CorpusError &e) {
    send_error(res, bad_request(e.what()));
  } catch (const InventoryError &e) {
    send_error(res, e.kind() == InventoryErrorKind::kUnknownId ? not_found(e.what())
                                                               : bad_request(e.what()));
  } catch (const Json::exception &e) {
    send_error(res, bad_request(e.what()));
  }
}

void Service::Impl::routes() {
  auto wrap = [this](void (Impl::*fn)(const httplib::Request &, httplib::Response &)) {
    return [this, fn](const httplib::Request &req, httplib::Response &res) {
      handle(res, [&] { (this->*fn)(req, res); });
    };
  };

  // Browsers keep several connections alive; each one pins a worker.
  server.new_task_queue = [] { return new httplib::ThreadPool(32); };
  server.Get("/health", [](const httplib::Request &, httplib::Response &res) {
    send(res, Json{{"status", "ok"}});
  });
  server.Get("/inventory", [this](const httplib::Request &, httplib::Response &res) {
    send(res, json_codec::to_json(inventory.document()));
  });
  server.Get("/classes", [this](const httplib::Request &, httplib::Response &res) {
    Json list = Json::array();
    for (const OntoClass &c : inventory.classes()) {
      Json j = json_codec::to_json(c);
      j["depth"] = inventory.depth(c.id);
      list.push_back(std::move(j));
    }
    send(res, list);
  });
  server.Get("/candidates", wrap(&Impl::get_candidates));
  server.Get(R"(/alignment/([^/]+))", wrap(&Impl::get_alignment));
  server.Get(R"(/corpus/sentences/([^/]+))",
             [this](const httplib::Request &req, httplib::Response &res) {
               handle(res, [&] {
                 const Sentence *s = corpus->find_sentence(req.matches[1].str());
                 if (!s) throw not_found("no sentence '" + req.matches[1].str() + "'");
                 send(res, json_codec::to_json(*s));
               });
             });
  server.Post("/corpus/sample", wrap(&Impl::post_sample));
  server.Get("/records", wrap(&Impl::get_records));
  server.Post("/records", wrap(&Impl::post_record));
  server.Get(R"(/records/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
    handle(res, [&] { send(res, json_codec::to_json(require_record(req.matches[1].str()))); });
  });
  server.Patch(R"(/records/([^/]+))", wrap(&Impl::patch_record));
  server.Post(R"(/records/([^/]+)/relatedness)", wrap(&Impl::post_relatedness));
  server.Post(R"(/records/([^/]+)/chain/validate)", wrap(&Impl::post_chain_validate));
  server.Get(R"(/stats/([a-z-]+))", wrap(&Impl::get_stats));

  server.set_error_handler([](const httplib::Request &req, httplib::Response &res) {
    if (!res.body.empty()) return;
    if (res.status == 404) {
      send_error(res, not_found("no route for " + req.method + " " + req.path));
    }
  });
  server.set_exception_handler(
      [](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
        std::string what = "unexpected error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception &e) {
          what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(Json{{"code", "internal"}, {"detail", what}}.dump(), "application/json");
      });
}

void Service::Impl::get_candidates(const httplib::Request &req, httplib::Response &res) {
  if (!req.has_param("a") || !req.has_param("b")) {
    throw bad_request("query parameters 'a' and 'b' are required");
  }
  std::string a = req.get_param_value("a");
  std::string b = req.get_param_value("b");
  bool both = !req.has_param("both") || req.get_param_value("both") != "false";
  inventory.get_class(a);
  inventory.get_class(b);
  Json list = Json::array();
  for (const Candidate &c : inventory.candidate_relations(a, b, both)) {
    const RelationDef &def = inventory.get_relation(c.relation);
    list.push_back(Json{{"relation", c.relation},
                        {"direction", to_string(c.direction)},
                        {"origin", to_string(def.origin)},
                        {"label", def.label},
                        {"description", def.description},
                        {"example", def.example}});
  }
  send(res, Json{{"a", a}, {"b", b}, {"candidates", std::move(list)}});
}

void Service::Impl::get_alignment(const httplib::Request &req, httplib::Response &res) {
  std::string lemma = req.matches[1].str();
  std::string pos_name = req.has_param("pos") ? req.get_param_value("pos") : "noun";
  std::optional<Pos> pos = parse_pos(pos_name);
  if (!pos) throw bad_request("unknown part of speech '" + pos_name + "'");
  Json senses = Json::array();
  for (const SenseClass &sc : alignment.classes_for(lemma, *pos)) {
    std::string gloss;
    for (const SenseEntry &e : alignment.entries()) {
      if (e.lemma == lemma && e.pos == *pos && e.sense_id == sc.sense_id) gloss = e.gloss;
    }
    senses.push_back(Json{{"sense", sc.sense_id},
                          {"class", sc.class_id},
                          {"gloss", gloss},
                          {"default", sc.sense_id == kDefaultSense}});
  }
  send(res, Json{{"lemma", lemma}, {"pos", pos_name}, {"senses", std::move(senses)}});
}

void Service::Impl::post_sample(const httplib::Request &req, httplib::Response &res) {
  Json body = req.body.empty() ? Json::object() : parse_body(req);
  uint64_t seed = body.value("seed", config.seed);
  auto n_it = body.find("n");
  if (n_it == body.end() || !n_it->is_number_unsigned()) {
    throw bad_request("'n' (unsigned integer) is required");
  }
  if (!corpus->glossary()) throw bad_request("the corpus has no glossary entries");
  Json list = Json::array();
  for (const PairCandidate &c :
       sample_first_terms(corpus->documents(), *corpus->glossary(), seed, n_it->get<size_t>())) {
    list.push_back(json_codec::to_json(c));
  }
  send(res, Json{{"seed", seed}, {"candidates", std::move(list)}});
}

void Service::Impl::get_records(const httplib::Request &req, httplib::Response &res) {
  std::optional<Status> status;
  if (req.has_param("status")) {
    status = parse_status(req.get_param_value("status"));
    if (!status) throw bad_request("unknown status '" + req.get_param_value("status") + "'");
  }
  std::vector<AnnotationRecord> out;
  for (const auto &[id, r] : *store.snapshot()) {
    if (!status || classify_status(*r) == *status) out.push_back(*r);
  }
  send(res, record_list(out));
}

void Service::Impl::post_record(const httplib::Request &req, httplib::Response &res) {
  Json body = parse_body(req);
  std::string token = mutation_token(req);
  AnnotationRecord r;
  r.first = json_codec::mention_from_json(body.at("first"));
  r.second = json_codec::mention_from_json(body.at("second"));
  r.sentence = body.value("sentence", r.first.sentence);
  if (auto a = body.find("assignment"); a != body.end() && !a->is_null()) {
    r.assignment = canonicalize_assignment(json_codec::assignment_from_json(*a), inventory);
  }
  if (auto rs = body.find("review_status"); rs != body.end()) {
    auto parsed = parse_review_status(rs->get<std::string>());
    if (!parsed) throw bad_request("unknown review status");
    r.review_status = *parsed;
  }
  bool explicit_id = body.contains("id");
  r.id = explicit_id ? body.at("id").get<std::string>() : store.next_id();
  if (auto v = check(r); !v.empty()) throw validation_failed("record is not valid", v);

  for (const auto &[id, existing] : *store.snapshot()) {
    if (existing->version == 1 && existing->mutation_token == token &&
        (!explicit_id || id == r.id)) {
      send(res, json_codec::to_json(*existing), 200);
      return;
    }
  }
  for (int attempt = 0;; ++attempt) {
    try {
      send(res, json_codec::to_json(store.create(r, token)), 201);
      return;
    } catch (const StoreError &e) {
      if (explicit_id || e.kind() != StoreErrorKind::kExists || attempt > 8) throw;
      r.id = store.next_id();
    }
  }
}

void Service::Impl::patch_record(const httplib::Request &req, httplib::Response &res) {
  Json body = parse_body(req);
  uint64_t version = required_version(body);
  std::string id = req.matches[1].str();
  for (auto it = body.begin(); it != body.end(); ++it) {
    static const std::set<std::string> known{"version", "assignment", "first", "second",
                                             "review_status"};
    if (!known.count(it.key())) throw bad_request("unknown field '" + it.key() + "'");
  }
  std::optional<std::optional<Assignment>> assignment;
  if (auto a = body.find("assignment"); a != body.end()) {
    assignment.emplace();
    if (!a->is_null()) {
      *assignment = canonicalize_assignment(json_codec::assignment_from_json(*a), inventory);
    }
  }
  std::optional<ReviewStatus> review;
  if (auto rs = body.find("review_status"); rs != body.end()) {
    review = parse_review_status(rs->get<std::string>());
    if (!review) throw bad_request("unknown review status");
  }
  AnnotationRecord updated =
      store.update(id, version, mutation_token(req), [&](const AnnotationRecord &current) {
        AnnotationRecord next = current;
        if (body.contains("first")) next.first = patch_mention(next.first, body["first"]);
        if (body.contains("second")) next.second = patch_mention(next.second, body["second"]);
        if (assignment) next.assignment = *assignment;
        if (review) next.review_status = *review;
        if (auto v = check(next); !v.empty()) throw validation_failed("record is not valid", v);
        return next;
      });
  send(res, json_codec::to_json(updated));
}

void Service::Impl::post_relatedness(const httplib::Request &req, httplib::Response &res) {
  Json body = parse_body(req);
  std::string id = req.matches[1].str();
  std::string annotator = req.get_header_value("X-Annotator");
  if (body.contains("annotator")) annotator = body["annotator"].get<std::string>();
  if (annotator.empty()) throw bad_request("annotator (field or X-Annotator header) is required");
  auto score_it = body.find("score");
  if (score_it == body.end() || !score_it->is_number()) throw bad_request("'score' is required");
  double score = score_it->get<double>();

  uint64_t version;
  if (body.contains("version")) {
    version = required_version(body);
  } else {
    AnnotationRecord current = require_record(id);
    auto it = current.relatedness.find(annotator);
    if (it != current.relatedness.end() && it->second == score) {
      send(res, json_codec::to_json(current));
      return;
    }
    version = current.version;
  }
  AnnotationRecord updated =
      store.update(id, version, mutation_token(req), [&](const AnnotationRecord &current) {
        return set_relatedness(current, annotator, score);
      });
  send(res, json_codec::to_json(updated));
}

void Service::Impl::post_chain_validate(const httplib::Request &req, httplib::Response &res) {
  Json body = parse_body(req);
  AnnotationRecord r = require_record(req.matches[1].str());
  auto chain_it = body.find("chain");
  if (chain_it == body.end() || !chain_it->is_array()) throw bad_request("'chain' array is required");
  CompositeAssignment c;
  for (const Json &link : *chain_it) c.chain.push_back(json_codec::link_from_json(link));
  auto canonical = std::get<CompositeAssignment>(canonicalize_assignment(c, inventory));
  ConceptMention first = body.contains("first") ? patch_mention(r.first, body["first"]) : r.first;
  ConceptMention second =
      body.contains("second") ? patch_mention(r.second, body["second"]) : r.second;
  auto violations = validate_chain(canonical.chain, first, second, inventory);
  send(res, Json{{"valid", violations.empty()},
                 {"length", canonical.chain.size()},
                 {"violations", json_codec::to_json(violations)}});
}

void Service::Impl::get_stats(const httplib::Request &req, httplib::Response &res) {
  std::string kind = req.matches[1].str();
  std::vector<AnnotationRecord> records = store.records();
  if (kind == "summary") {
    Json j = json_codec::to_json(summarize(records, inventory));
    size_t reviewed = std::count_if(records.begin(), records.end(), [](const auto &r) {
      return r.review_status == ReviewStatus::kReviewed;
    });
    j["progress"] = {{"records", records.size()}, {"reviewed", reviewed}};
    send(res, j);
  } else if (kind == "frequencies") {
    FrequencyOptions opts;
    if (req.has_param("scope")) opts.scope = parse_frequency_scope(req.get_param_value("scope"));
    if (req.has_param("origin")) opts.origin = parse_origin_filter(req.get_param_value("origin"));
    opts.fold_inverses = req.has_param("fold") && req.get_param_value("fold") == "true";
    send(res, json_codec::to_json(relation_frequencies(records, inventory, opts)));
  } else if (kind == "chain-length") {
    try {
      send(res, json_codec::to_json(chain_length_stats(records)));
    } catch (const StatsError &) {
      send(res, Json{{"composite_records", 0}, {"total_links", 0}, {"average", nullptr}});
    }
  } else if (kind == "relatedness") {
    send(res, json_codec::to_json(relatedness_report(records)));
  } else {
    throw not_found("unknown report '" + kind + "'");
  }
}

Service::Service(const ServiceConfig &config, StoreOptions store_options)
    : impl_(std::make_unique<Impl>(config, std::move(store_options))) {}

Service::~Service() = default;

int Service::bind() {
  const ListenAddress &addr = impl_->address;
  if (addr.port == 0) {
    int port = impl_->server.bind_to_any_port(addr.host);
    if (port < 0) throw ConfigError(ConfigErrorKind::kBadValue, "cannot bind " + addr.host);
    impl_->address.port = port;
    return port;
  }
  if (!impl_->server.bind_to_port(addr.host, addr.port)) {
    throw ConfigError(ConfigErrorKind::kBadValue, "cannot bind " + impl_->config.listen);
  }
  return addr.port;
}

void Service::run() {
  impl_->run_entered = true;
  if (!impl_->stop_requested) impl_->server.listen_after_bind();
  impl_->run_finished = true;
}

void Service::stop() {
  impl_->stop_requested = true;
  if (!impl_->run_entered) return;
  // run() may not have reached the accept loop yet; httplib ignores a stop
  // that arrives before it does.
  while (!impl_->server.is_running() && !impl_->run_finished) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  impl_->server.stop();
}

const Inventory &Service::inventory() const { return impl_->inventory; }

RecordStore &Service::store() { return impl_->store; }

int run_service(const ServiceConfig &config, const StoreOptions &store_options,
                std::ostream &log) {
  // Block the shutdown signals before any server thread exists so that
  // only the waiter below receives them.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  sigaddset(&set, SIGUSR1);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  std::unique_ptr<Service> service;
  int port = 0;
  try {
    check_config(config);
    service = std::make_unique<Service>(config, store_options);
    port = service->bind();
  } catch (const std::exception &e) {
    log << "semrel serve: " << e.what() << std::endl;
    return 1;
  }
  ListenAddress addr = parse_listen(config.listen);
  log << "semrel serve: listening on " << addr.host << ":" << port << " ("
      << service->store().snapshot()->size() << " records)" << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    if (sig != SIGUSR1) log << "semrel serve: shutting down" << std::endl;
    service->stop();
  });
  service->run();
  pthread_kill(waiter.native_handle(), SIGUSR1);
  waiter.join();
  return 0;
}

}  // namespace semrel
