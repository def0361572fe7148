#include "ocse/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ocse {

namespace {

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

}  // namespace

void write_network(const Network& net, const std::string& path) {
  std::ofstream out = open_out(path);
  nlohmann::json header{{"n", net.n}, {"rho", spectral_radius(net)}};
  out << header.dump() << "\n";
  for (int i = 0; i < net.n; ++i)
    for (int j = 0; j < net.n; ++j)
      if (net.weights(i, j) != 0.0)
        out << i << "," << j << "," << fmt(net.weights(i, j), 17) << "\n";
}

Network read_network(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("network file is empty: " + path);
  const nlohmann::json header = nlohmann::json::parse(line);
  const int n = header.at("n").get<int>();
  if (n < 1) throw std::runtime_error("network header has invalid n: " + path);

  Network net(n, Eigen::MatrixXd::Zero(n, n));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int i = -1, j = -1;
    double w = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &i, &j, &w) != 3)
      throw std::runtime_error("bad edge line '" + line + "' in " + path);
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::runtime_error("edge index out of range in " + path);
    net.weights(i, j) = w;
  }
  if (header.contains("rho"))
    net.spectral_radius_cache = header.at("rho").get<double>();
  return net;
}

void write_timeseries(const TimeSeries& ts, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t";
  for (int i = 0; i < ts.n(); ++i) out << ",x" << i;
  out << "\n";
  for (long t = 0; t < ts.T(); ++t) {
    out << t;
    for (int i = 0; i < ts.n(); ++i) out << "," << fmt(ts.samples(t, i), 17);
    out << "\n";
  }
}

TimeSeries read_timeseries(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("time series file is empty: " + path);

  int n = 0;
  {
    std::stringstream header(line);
    std::string field;
    bool first = true;
    while (std::getline(header, field, ',')) {
      if (first) {
        if (field != "t")
          throw std::runtime_error("time series header must start with t: " + path);
        first = false;
      } else {
        ++n;
      }
    }
  }
  if (n < 1) throw std::runtime_error("time series has no node columns: " + path);

  std::vector<double> values;
  long T = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    if (!std::getline(row, field, ','))
      throw std::runtime_error("bad row in " + path);
    for (int i = 0; i < n; ++i) {
      if (!std::getline(row, field, ','))
        throw std::runtime_error("short row in " + path);
      values.push_back(std::stod(field));
    }
    ++T;
  }

  TimeSeries ts;
  ts.samples.resize(T, n);
  for (long t = 0; t < T; ++t)
    for (int i = 0; i < n; ++i)
      ts.samples(t, i) = values[static_cast<std::size_t>(t) * n +
                                static_cast<std::size_t>(i)];
  return ts;
}

namespace {

nlohmann::json trace_to_json(const DiscoveryTrace& tr) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : tr.steps) {
    steps.push_back({{"phase", s.phase == DiscoveryStep::Phase::discovery
                                   ? "discovery"
                                   : "removal"},
                     {"candidate", s.candidate},
                     {"statistic", s.statistic},
                     {"significant", s.significant}});
  }
  return {{"target", tr.target},
          {"steps", steps},
          {"discovered", tr.discovered},
          {"pruned", tr.pruned}};
}

DiscoveryTrace trace_from_json(const nlohmann::json& j) {
  DiscoveryTrace tr;
  tr.target = j.at("target").get<NodeSet>();
  tr.discovered = j.at("discovered").get<NodeSet>();
  tr.pruned = j.at("pruned").get<NodeSet>();
  for (const auto& s : j.at("steps")) {
    DiscoveryStep step;
    step.phase = s.at("phase").get<std::string>() == "discovery"
                     ? DiscoveryStep::Phase::discovery
                     : DiscoveryStep::Phase::removal;
    step.candidate = s.at("candidate").get<int>();
    step.statistic = s.at("statistic").get<double>();
    step.significant = s.at("significant").get<bool>();
    tr.steps.push_back(step);
  }
  return tr;
}

}  // namespace

void write_inferred(const InferredNetwork& net, const std::string& path,
                    bool include_traces) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : net.edges)
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"statistic", e.statistic}});
  nlohmann::json doc{{"method", method_name(net.method)},
                     {"n", net.n},
                     {"edges", edges},
                     {"degenerate_nodes", net.degenerate_nodes}};
  if (include_traces && !net.traces.empty()) {
    nlohmann::json traces = nlohmann::json::array();
    for (const auto& tr : net.traces) traces.push_back(trace_to_json(tr));
    doc["per_node_traces"] = traces;
  }
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
}

InferredNetwork read_inferred(const std::string& path) {
  std::ifstream in = open_in(path);
  nlohmann::json doc;
  in >> doc;

  InferredNetwork net;
  net.n = doc.at("n").get<int>();
  net.method = method_from_name(doc.at("method").get<std::string>());
  for (const auto& e : doc.at("edges")) {
    net.edges.push_back({e.at("source").get<int>(), e.at("target").get<int>(),
                         e.at("statistic").get<double>()});
  }
  if (doc.contains("degenerate_nodes"))
    net.degenerate_nodes = doc.at("degenerate_nodes").get<NodeSet>();
  if (doc.contains("per_node_traces"))
    for (const auto& tr : doc.at("per_node_traces"))
      net.traces.push_back(trace_from_json(tr));
  return net;
}

void write_covariances_csv(const LaggedCovariance& cov, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "matrix,row";
  for (int j = 0; j < cov.n; ++j) out << ",c" << j;
  out << "\n";
  const auto dump = [&](const char* name, const Eigen::MatrixXd& m) {
    for (int i = 0; i < cov.n; ++i) {
      out << name << "," << i;
      for (int j = 0; j < cov.n; ++j) out << "," << fmt(m(i, j), 17);
      out << "\n";
    }
  };
  dump("phi0", cov.phi0);
  dump("phi1", cov.phi1);
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "method,n,p,np,rho,T,r,theta,realizations,degenerate,"
         "eps_minus,eps_plus,stderr,stderr_plus,runtime_s,T_star\n";
  for (const auto& c : result.cells) {
    out << method_name(c.cell.method) << "," << c.cell.n << ","
        << fmt(c.cell.p, 12) << "," << fmt(c.cell.np, 12) << ","
        << fmt(c.cell.rho, 12) << "," << c.cell.T << "," << c.cell.r << ","
        << fmt(c.cell.theta, 12) << "," << c.realizations << ","
        << c.degenerate << "," << fmt(c.eps_minus_mean, 12) << ","
        << fmt(c.eps_plus_mean, 12) << "," << fmt(c.eps_minus_se, 12) << ","
        << fmt(c.eps_plus_se, 12) << "," << fmt(c.runtime_seconds, 12) << ",";
    if (c.t_star) out << *c.t_star;
    out << "\n";
  }
}

}  // namespace ocse
