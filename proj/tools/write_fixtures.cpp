// Writes the reference curves as curve-spec JSON into the given directory.

#include <fstream>
#include <iostream>

#include "jordan/curve_json.hpp"
#include "jordan/fixtures.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: write_fixtures <dir>\n";
        return 1;
    }
    const std::string dir = argv[1];
    using namespace jordan;
    const std::pair<const char*, CurveSpec> all[] = {
        {"circle", fixtures::circle()},           {"ellipse8", fixtures::rotated_ellipse()},
        {"rounded_square", fixtures::rounded_square()}, {"blob", fixtures::cubic_blob()},
        {"kidney", fixtures::kidney()},           {"figure8", fixtures::figure_eight()},
        {"open_arc", fixtures::open_arc()},
    };
    for (const auto& [name, spec] : all) {
        std::ofstream out(dir + "/" + name + ".json");
        out << curve_to_json(spec).dump(2) << "\n";
    }
    return 0;
}
