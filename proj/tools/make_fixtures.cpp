#include "dgnerve/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Write the example documents"};
  std::string dir = "fixtures";
  std::uint64_t seed = 1;
  app.add_option("--out", dir, "Output directory");
  app.add_option("--seed", seed, "Fixture seed");
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(dir);
  for (const auto& [name, doc] : dgn::fixture_documents(seed)) {
    const auto path = std::filesystem::path(dir) / (name + ".json");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
    out << doc.dump(2) << "\n";
  }
  return 0;
}
