// Runs acceptance criteria and prints one line per criterion.
// Usage: klsf_acceptance [--threads N] [--json FILE] [ID...]

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "klsf/klsf.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria A1-A11"};
  unsigned threads = 0;
  std::string json_path;
  std::vector<std::string> ids;
  app.add_option("--threads", threads, "worker threads for enumeration (default KLSF_THREADS or 1)");
  app.add_option("--json", json_path, "write all results as JSON");
  app.add_option("ids", ids, "criteria to run (default all)");
  CLI11_PARSE(app, argc, argv);

  if (ids.empty())
    for (const auto& [id, fn] : klsf::acceptance::criteria()) ids.push_back(id);

  klsf::AcceptanceContext ctx(klsf::resolve_threads(threads));
  klsf::Json all = klsf::Json::array();
  bool ok = true;
  try {
    for (const auto& id : ids) {
      const auto r = klsf::acceptance::run(id, ctx);
      std::cout << klsf::acceptance::format_line(r) << std::endl;
      ok = ok && r.pass;
      all.push_back(klsf::Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"finding", r.finding},
                               {"detail", r.detail}, {"seconds", r.seconds}, {"data", r.data}});
    }
  } catch (const klsf::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!json_path.empty()) std::ofstream(json_path) << all.dump(2) << "\n";
  return ok ? 0 : 1;
}
