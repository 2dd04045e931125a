#include "tetris/runner.hpp"

#include <fstream>
#include <ostream>

#include "tetris/errors.hpp"
#include "tetris/ingest.hpp"
#include "tetris/liquidity.hpp"
#include "tetris/report.hpp"

namespace tetris {
namespace {

bool looks_like_liquidity_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("a_max") != std::string::npos || line.find("holdings") != std::string::npos) return true;
    if (!line.empty() && line.front() != '#') return false;
  }
  return false;
}

void require_inputs(const RunConfig& config, std::size_t count) {
  if (config.inputs.size() != count) {
    throw PreconditionError("expected " + std::to_string(count) + " input file(s), got " +
                            std::to_string(config.inputs.size()));
  }
}

int run_mode(const RunConfig& config, std::ostream& out) {
  const ClearingOptions options{config.allocation, config.split_components};
  const ReportOptions report{config.emit_graph};
  switch (config.mode) {
    case Mode::kAnalyze: {
      require_inputs(config, 1);
      out << render_analysis(ingest_obligations(config.inputs[0]));
      return kExitSuccess;
    }
    case Mode::kValidate: {
      require_inputs(config, 1);
      if (looks_like_liquidity_file(config.inputs[0])) {
        std::ifstream in(config.inputs[0], std::ios::binary);
        if (!in) throw ValidationError({{0, "cannot open '" + config.inputs[0].string() + "'"}});
        const LiquidityTable table = parse_liquidity(in);
        out << "valid liquidity file: " << table.rows.size() << " firms, a_max " << table.facility_cap << "\n";
      } else {
        const ObligationNetwork network = ingest_obligations(config.inputs[0]);
        out << "valid obligations file: " << network.firm_count() << " firms, " << network.obligations().size()
            << " obligations, weight " << network_weight(network) << "\n";
      }
      return kExitSuccess;
    }
    case Mode::kClear: {
      require_inputs(config, 1);
      const ObligationNetwork network = ingest_obligations(config.inputs[0]);
      const ClearingResult result = clear(network, options);
      out << render_summary(result, network);
      if (config.output_dir) emit_report(result, network, *config.output_dir, report);
      return kExitSuccess;
    }
    case Mode::kClearExtended: {
      require_inputs(config, 2);
      const ExtendedInputs inputs = ingest_extended(config.inputs[0], config.inputs[1]);
      const ExtendedRun result = clear_extended(inputs.network, inputs.sources, options);
      out << render_extended_summary(result, inputs.network);
      if (config.output_dir) emit_extended_report(result, inputs.network, *config.output_dir, report);
      return result.feasibility.feasible ? kExitSuccess : kExitInfeasible;
    }
  }
  return kExitValidationFailure;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_mode(config, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  }
}

}  // namespace tetris
