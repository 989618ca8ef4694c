#include <exception>
#include <iostream>

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "cli/table.hpp"
#include "ifsc/errors.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 4 I/O failure, 3 anything numeric.
int exit_code_for(const ifsc::Error& e) {
  if (dynamic_cast<const ifsc::ConfigError*>(&e) != nullptr) return 2;
  if (dynamic_cast<const ifsc::IoError*>(&e) != nullptr) return 4;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  std::string context;
  try {
    ifsc::cli::ExperimentConfig cfg = ifsc::cli::parse_config(argc, argv);
    context = std::string(ifsc::cli::command_name(cfg.command)) + ": ";
    ifsc::cli::ResultTable table = ifsc::cli::run(cfg);
    ifsc::cli::emit(table, cfg.format, cfg.out);
    return 0;
  } catch (const ifsc::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const ifsc::Error& e) {
    std::cerr << "error: " << e.code() << " " << context << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: E_INTERNAL " << context << e.what() << "\n";
    return 3;
  }
}
