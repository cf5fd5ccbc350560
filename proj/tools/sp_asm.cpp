#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "sp_commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Assemble sequence-processor source into a binary program"};
    std::string in;
    std::string out = "a.spbin";
    app.add_option("input", in, "assembly source")->required()->check(CLI::ExistingFile);
    app.add_option("-o,--output", out, "binary program");
    CLI11_PARSE(app, argc, argv);
    try {
        dqc::tools::sp_assemble_file(in, out, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "sp-asm: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
