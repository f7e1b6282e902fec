// talkshare: talk-time sharing dynamics for timestamped conversations.
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "talkshare/model.hpp"
#include "talkshare/summary.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Talk-time sharing dynamics for timestamped conversations"};
  app.set_version_flag("--version", talkshare::kToolVersion);
  app.require_subcommand(1);

  talkshare::cli::register_analyze(app);
  talkshare::cli::register_compare(app);
  talkshare::cli::register_viz(app);
  talkshare::cli::register_consistency(app);
  talkshare::cli::register_demographics(app);
  talkshare::cli::register_synth(app);
  talkshare::cli::register_validate_intervals(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors
  } catch (const talkshare::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const talkshare::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const talkshare::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
