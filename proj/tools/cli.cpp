#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "mapseg/image_io.hpp"
#include "mapseg/segmenter.hpp"

namespace mapseg::cli {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_eigenvector(const std::vector<double>& x, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ImageIoError("cannot open " + path.string() + " for writing");
  for (std::size_t k = 0; k < x.size(); ++k) {
    out << fmt_double(x[k]) << (k + 1 == x.size() ? '\n' : ' ');
  }
  if (!out) throw ImageIoError("error writing " + path.string());
}

void write_report(const CliOptions& opt, const SegmentationReport& r,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ImageIoError("cannot open " + path.string() + " for writing");
  auto kv = [&](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  kv("input", opt.input.string());
  kv("width", std::to_string(r.labels.width()));
  kv("height", std::to_string(r.labels.height()));
  kv("n", std::to_string(r.labels.size()));
  kv("colors_requested", std::to_string(opt.colors));
  kv("m", std::to_string(r.quantized.palette_size()));
  kv("lambda", fmt_double(opt.lambda));
  kv("neighborhood", std::to_string(opt.neighborhood));
  kv("smoothness", "constant_one");
  kv("seed", std::to_string(opt.seed));
  kv("max_iters", std::to_string(opt.max_iters));
  kv("tol", fmt_double(opt.tol));
  kv("eigenvalue", fmt_double(r.eigen.eigenvalue));
  kv("residual_norm", fmt_double(r.eigen.residual_norm));
  kv("iterations", std::to_string(r.eigen.iterations));
  kv("converged", r.eigen.converged ? "true" : "false");
  kv("breakdown", r.eigen.breakdown ? "true" : "false");
  kv("fore_pixels", std::to_string(r.labels.count(Label::fore)));
  kv("back_pixels", std::to_string(r.labels.count(Label::back)));
  kv("data_term", fmt_double(r.energy.data_term));
  kv("smoothness_term", fmt_double(r.energy.smoothness_term));
  kv("energy", fmt_double(r.energy.total));
  kv("reduced_objective", fmt_double(r.reduced_objective));
  kv("time_quantize_ms", fmt_double(r.timings.quantize_ms));
  kv("time_operator_ms", fmt_double(r.timings.operator_ms));
  kv("time_eigensolve_ms", fmt_double(r.timings.eigensolve_ms));
  kv("time_threshold_ms", fmt_double(r.timings.threshold_ms));
  kv("time_total_ms", fmt_double(r.timings.total_ms()));
  if (!out) throw ImageIoError("error writing " + path.string());
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOptions opt;
  CLI::App app{"Unsupervised binary colour segmentation from the top eigenvector of an "
               "approximate MRF energy",
               "mapseg"};
  app.add_option("input", opt.input, "Input image (binary PPM P6 or 8-bit PNG)")->required();
  app.add_option("--mask", opt.mask, "Output mask (P5 PGM, or PNG by extension)")->required();
  app.add_option("--overlay", opt.overlay, "Optional overlay image (P6, or PNG by extension)");
  app.add_option("--lambda", opt.lambda, "Smoothness weight")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--colors", opt.colors, "Number of colour classes")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));
  app.add_option("--neighborhood", opt.neighborhood, "Pixel connectivity")
      ->capture_default_str()
      ->check(CLI::IsMember({4, 8}));
  app.add_option("--max-iters", opt.max_iters, "Lanczos iteration budget")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 30));
  app.add_option("--tol", opt.tol, "Relative residual tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed of the Lanczos start vector")->capture_default_str();
  app.add_option("--report", opt.report, "Write a key = value report");
  app.add_option("--dump-eigenvector", opt.dump_eigenvector,
                 "Write the eigenvector as whitespace-separated reals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  SegmentationConfig cfg;
  cfg.colors = opt.colors;
  cfg.lambda = opt.lambda;
  cfg.connectivity = opt.neighborhood == 8 ? Connectivity::eight : Connectivity::four;
  cfg.lanczos.max_iterations = opt.max_iters;
  cfg.lanczos.residual_tolerance = opt.tol;
  cfg.lanczos.seed = opt.seed;

  try {
    validate(cfg);
    const RgbImage img = decode_image(opt.input);
    const SegmentationReport r = segment(img, cfg);

    encode_mask(r.labels, opt.mask);
    if (opt.overlay) encode_overlay(img, r.labels, *opt.overlay);
    if (opt.report) write_report(opt, r, *opt.report);
    if (opt.dump_eigenvector) write_eigenvector(r.eigen.eigenvector, *opt.dump_eigenvector);

    out << "n=" << r.labels.size() << " m=" << r.quantized.palette_size()
        << " lambda=" << fmt_double(opt.lambda) << " eigenvalue=" << fmt_double(r.eigen.eigenvalue)
        << " d=" << r.eigen.iterations << " E=" << fmt_double(r.energy.total)
        << " E*=" << fmt_double(r.reduced_objective)
        << " quantize_ms=" << fmt_double(r.timings.quantize_ms)
        << " operator_ms=" << fmt_double(r.timings.operator_ms)
        << " eigensolve_ms=" << fmt_double(r.timings.eigensolve_ms)
        << " threshold_ms=" << fmt_double(r.timings.threshold_ms) << '\n';

    if (!r.eigen.converged) {
      err << "error: eigensolver did not converge in " << r.eigen.iterations
          << " iterations (residual " << fmt_double(r.eigen.residual_norm)
          << "); outputs were written from the best available vector\n";
      return kNotConverged;
    }
    return kSuccess;
  } catch (const ImageIoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace mapseg::cli
