#include <exception>
#include <iostream>

#include "maxwell2d/commands.hpp"
#include "maxwell2d/config.hpp"
#include "maxwell2d/timestepper.hpp"

namespace {

void print_usage(std::ostream& out) {
    out << "Usage: maxwell2d <convergence|solve|verify|cfl> [--config PATH] [--key value]...\n"
        << "\n"
        << "Commands:\n"
        << "  convergence   manufactured-solution error/rate study over mesh.levels\n"
        << "  solve         single-level run writing field snapshots and the energy trace\n"
        << "  verify        runtime property suite (exit 0 iff all properties pass)\n"
        << "  cfl           formula bound vs. empirical stability threshold per level\n"
        << "\n"
        << "Common keys (command line wins over config file):\n"
        << "  problem = manufactured|zero      problem.m / coeff.m = 6|8|10|12 (0 = homogeneous)\n"
        << "  coeff.sigma_scale = 0.001        coeff.box = [0.25,0.75,0.25,0.75]\n"
        << "  mesh.levels = 3,4,5,6            mesh.level = 4 (single level)\n"
        << "  time.T = 0.25                    time.tau = 0.0005\n"
        << "  time.cfl_C = 2                   time.cfl_override = false\n"
        << "  output.dir = .                   output.every = 50\n"
        << "  seed = 1\n";
}

}  // namespace

int main(int argc, char* argv[]) {
    using namespace maxwell2d;
    if (argc < 2) {
        print_usage(std::cerr);
        return kExitConfig;
    }
    const std::string first = argv[1];
    if (first == "--help" || first == "-h" || first == "help") {
        print_usage(std::cout);
        return kExitOk;
    }
    try {
        const RunConfig cfg = parse_cli(argc - 1, argv + 1);
        return dispatch_command(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CflViolationError& e) {
        std::cerr << "config error (CFL): " << e.what() << "\n";
        return kExitConfig;
    } catch (const BlowUpError& e) {
        std::cerr << "numerical blow-up: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
