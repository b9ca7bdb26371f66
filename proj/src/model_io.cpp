#include "wmprc/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wmprc/version.hpp"

namespace wmprc {

using nlohmann::json;

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 0x100000001B3ull;
  }
  return hash;
}

std::string digest_string(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open file for digest: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return digest_string(buf.str());
}

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

json row_to_json(const CriterionRow& row) {
  return json{{"c", row.cluster_count},   {"feasible", row.feasible},
              {"mspe_y", row.mspe_y},     {"mspe_p", row.mspe_p},
              {"mspe_d", row.mspe_d},     {"pcp", row.pcp},
              {"mspeb_y", row.mspeb_y},   {"mspeb_p", row.mspeb_p},
              {"mspeb_d", row.mspeb_d}};
}

CriterionRow row_from_json(const json& doc) {
  CriterionRow row;
  row.cluster_count = doc.at("c").get<int>();
  row.feasible = doc.at("feasible").get<bool>();
  if (row.feasible) {
    row.mspe_y = doc.at("mspe_y").get<double>();
    row.mspe_p = doc.at("mspe_p").get<double>();
    row.mspe_d = doc.at("mspe_d").get<double>();
    row.pcp = doc.at("pcp").get<double>();
    row.mspeb_y = doc.at("mspeb_y").get<double>();
    row.mspeb_p = doc.at("mspeb_p").get<double>();
    row.mspeb_d = doc.at("mspeb_d").get<double>();
  }
  return row;
}

}  // namespace

std::string model_to_json(const StoredModel& stored,
                          const std::string& input_digest) {
  json labels = json::array();
  for (int g : stored.model.assignment.labels()) labels.push_back(g + 1);
  json doc{
      {"schema_version", kModelSchemaVersion},
      {"tool_version", kToolVersion},
      {"input_digest", input_digest},
      {"event", stored.event_id},
      {"method", stored.method},
      {"criterion", stored.criterion},
      {"k", stored.roster.size()},
      {"cluster_count", stored.model.cluster_count()},
      {"roster", stored.roster.ids()},
      {"labels", std::move(labels)},
      {"theta", vector_to_json(stored.model.theta)},
      {"beta", vector_to_json(stored.model.beta)},
      {"residuals", vector_to_json(stored.model.residuals)},
      {"rss", stored.model.rss},
      {"criteria", row_to_json(stored.row)},
  };
  return doc.dump(2) + "\n";
}

StoredModel model_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IngestError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const int schema = doc.at("schema_version").get<int>();
    if (schema != kModelSchemaVersion) {
      throw IngestError("unsupported model schema_version " +
                        std::to_string(schema));
    }
    StoredModel stored{
        RobotRoster(doc.at("roster").get<std::vector<std::string>>()),
        ClusteredModel{
            ClusterAssignment(doc.at("cluster_count").get<int>(), [&] {
              std::vector<int> labels;
              for (const auto& g : doc.at("labels")) {
                labels.push_back(g.get<int>() - 1);
              }
              return labels;
            }()),
            vector_from_json(doc.at("theta")),
            vector_from_json(doc.at("beta")),
            vector_from_json(doc.at("residuals")),
            doc.at("rss").get<double>(),
            EmpiricalCdf(vector_from_json(doc.at("residuals")))},
        doc.at("event").get<std::string>(),
        doc.value("method", ""),
        doc.value("criterion", ""),
        row_from_json(doc.at("criteria"))};
    if (stored.model.beta.size() != stored.roster.size()) {
      throw IngestError("model beta length disagrees with roster size");
    }
    return stored;
  } catch (const json::exception& e) {
    throw IngestError(std::string("model field error: ") + e.what());
  }
}

StoredModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string criterion_curve_csv(const std::vector<CriterionRow>& table) {
  std::ostringstream out;
  out << "c,feasible,mspe_y,mspe_p,mspe_d,pcp,mspeb_y,mspeb_p,mspeb_d\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    out << ',' << buf;
  };
  for (const CriterionRow& row : table) {
    out << row.cluster_count << ',' << (row.feasible ? 1 : 0);
    num(row.mspe_y);
    num(row.mspe_p);
    num(row.mspe_d);
    num(row.pcp);
    num(row.mspeb_y);
    num(row.mspeb_p);
    num(row.mspeb_d);
    out << '\n';
  }
  return out.str();
}

std::string trace_to_json(const ChainTrace& trace) {
  json events = json::array();
  for (const TraceEvent& ev : trace.events) {
    json labels = json::array();
    for (int g : ev.labels) labels.push_back(g + 1);
    events.push_back(
        json{{"kind", ev.kind == TraceEvent::Kind::kMerge ? "merge" : "refine"},
             {"c", ev.cluster_count},
             {"merged_low", ev.merged_low + 1},
             {"merged_high", ev.merged_high + 1},
             {"iteration", ev.iteration},
             {"labels", std::move(labels)}});
  }
  json doc{{"tool_version", kToolVersion}, {"events", std::move(events)}};
  return doc.dump(2) + "\n";
}

ChainTrace trace_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IngestError(std::string("trace file is not valid JSON: ") + e.what());
  }
  ChainTrace trace;
  try {
    for (const auto& entry : doc.at("events")) {
      TraceEvent ev;
      ev.kind = entry.at("kind").get<std::string>() == "merge"
                    ? TraceEvent::Kind::kMerge
                    : TraceEvent::Kind::kRefineIteration;
      ev.cluster_count = entry.at("c").get<int>();
      ev.merged_low = entry.at("merged_low").get<int>() - 1;
      ev.merged_high = entry.at("merged_high").get<int>() - 1;
      ev.iteration = entry.at("iteration").get<int>();
      for (const auto& g : entry.at("labels")) {
        ev.labels.push_back(g.get<int>() - 1);
      }
      trace.events.push_back(std::move(ev));
    }
  } catch (const json::exception& e) {
    throw IngestError(std::string("trace field error: ") + e.what());
  }
  return trace;
}

}  // namespace wmprc
