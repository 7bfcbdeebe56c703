// Regenerates the shipped data files (seed.mwo, provenance.tsv) from code.
// Usage: mwo-gen-data <data-directory>

#include <fstream>
#include <iostream>
#include <string>

#include "mwo/knowledge_base.hpp"

namespace {

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return false;
    }
    std::cout << "wrote " << path << "\n";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: mwo-gen-data <data-directory>\n";
        return 1;
    }
    std::string dir = argv[1];
    bool ok = write_file(dir + "/seed.mwo", mwo::kb_to_document(mwo::seed_kb()));
    ok = write_file(dir + "/provenance.tsv", mwo::provenance_tsv()) && ok;
    return ok ? 0 : 1;
}
