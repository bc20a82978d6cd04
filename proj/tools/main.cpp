// turretguard CLI: solve, simulate, sweep, and render subcommands over
// scenario JSON files.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "turretguard/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"turret + mobile defender target-defense game solver"};
    app.require_subcommand(1);

    std::string scenario_path;
    auto* solve_cmd = app.add_subcommand("solve", "solve a scenario and print the solution report");
    solve_cmd->add_option("file", scenario_path, "scenario JSON file")->required();

    turretguard::cli::SimulateOptions sim_opt;
    std::string sim_path;
    bool open_loop = false;
    std::string guess = "ccw";
    auto* sim_cmd = app.add_subcommand("simulate", "forward-simulate the equilibrium strategies");
    sim_cmd->add_option("file", sim_path, "scenario JSON file")->required();
    auto* fb = sim_cmd->add_flag("--feedback", sim_opt.feedback, "re-solve along the trajectory");
    sim_cmd->add_flag("--open-loop", open_loop, "hold the initial equilibrium controls (default)")
        ->excludes(fb);
    sim_cmd->add_option("--guess", guess, "attacker's guess of the turn direction (ccw|cw)")
        ->check(CLI::IsMember({"ccw", "cw"}));
    sim_cmd->add_option("--csv", sim_opt.csv_path, "write the trajectory CSV here");

    std::string sweep_path, sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "classify the game over a grid of states");
    sweep_cmd->add_option("file", sweep_path, "scenario JSON file with a sweep block")->required();
    sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();

    std::string render_path, render_svg;
    auto* render_cmd = app.add_subcommand("render", "draw a scenario solution or trajectory CSV");
    render_cmd->add_option("file", render_path, "scenario JSON or trajectory CSV")->required();
    render_cmd->add_option("--svg", render_svg, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed()) return turretguard::cli::cmd_solve(scenario_path, std::cout, std::cerr);
        if (sim_cmd->parsed()) {
            sim_opt.guess = guess == "cw" ? turretguard::TurnDirection::CW : turretguard::TurnDirection::CCW;
            return turretguard::cli::cmd_simulate(sim_path, sim_opt, std::cout, std::cerr);
        }
        if (sweep_cmd->parsed()) return turretguard::cli::cmd_sweep(sweep_path, sweep_out, std::cerr);
        if (render_cmd->parsed()) return turretguard::cli::cmd_render(render_path, render_svg, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
