// Regenerates the committed fixtures from the canonical task data:
//   fixtures/graph10.json         orthogonality graph of the ten vectors
//   fixtures/realization10.json   state + vectors
//   fixtures/setups/state.json    preparation setup for the state
//   fixtures/setups/target_NN.json  preparation setup per target vector
#include "exwb/canonical.hpp"
#include "exwb/photonics.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
    std::cout << "wrote " << path.string() << "\n";
}

exwb::Ququart to_ququart(const std::vector<exwb::RationalComplex>& v) {
    exwb::Ququart q{};
    for (std::size_t k = 0; k < 4; ++k)
        q[k] = exwb::Complex(exwb::to_double(v[k].re), exwb::to_double(v[k].im));
    return q;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("fixtures");
    fs::create_directories(dir / "setups");

    write_file(dir / "graph10.json", exwb::canonical_graph().to_json_text());
    write_file(dir / "realization10.json", exwb::canonical_realization().to_json_text());

    write_file(dir / "setups" / "state.json",
               exwb::design_preparation(to_ququart(exwb::canonical_state().amplitudes))
                   .to_json_text());

    const auto vectors = exwb::canonical_vectors();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "target_%02zu.json", i + 1);
        write_file(dir / "setups" / name,
                   exwb::design_preparation(to_ququart(vectors[i])).to_json_text());
    }
    return 0;
}
