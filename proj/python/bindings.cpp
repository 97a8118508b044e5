#include "kummer/cli.hpp"
#include "kummer/cyclic_cohomology.hpp"
#include "kummer/error.hpp"
#include "kummer/exact_linalg.hpp"
#include "kummer/green_ring.hpp"
#include "kummer/kummer_model.hpp"
#include "kummer/torsion_ledger.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace kummer;

namespace {

using Rows = std::vector<std::vector<std::string>>;  // decimal strings, any size

linalg::IntMatrix to_matrix(const Rows& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  linalg::IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InvalidArgument("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) {
      try {
        m(i, j) = Integer(rows[i][j]);
      } catch (const std::exception&) {
        throw InvalidArgument("not an integer: " + rows[i][j]);
      }
    }
  }
  return m;
}

Rows to_rows(const linalg::IntMatrix& m) {
  Rows out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).str();
  return out;
}

model::CycleConvention convention(const std::string& name) {
  if (name == "forward") return model::CycleConvention::Forward;
  if (name == "backward") return model::CycleConvention::Backward;
  throw InvalidArgument("convention must be forward or backward");
}

std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> triple(const JordanType& t) { return {t.l1, t.l2, t.l3}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact certificate that H*(K2(A), Z) is torsion free";

  py::register_exception<Error>(m, "KummerError", PyExc_ValueError);

  m.def(
      "run",
      [](const std::string& command, const std::string& format, std::optional<std::string> script,
         std::optional<std::uint64_t> seed, const std::string& conv) {
        cli::RunConfig c;
        const auto cmd = cli::parse_command(command);
        if (!cmd) throw InvalidArgument("unknown command " + command);
        c.command = *cmd;
        if (format != "text" && format != "json") throw InvalidArgument("format must be text or json");
        c.format = format == "json" ? cli::Format::Json : cli::Format::Text;
        c.script_path = std::move(script);
        c.seed = seed;
        c.convention = convention(conv);
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(c, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("command"), py::arg("format") = "text", py::arg("script") = py::none(), py::arg("seed") = py::none(),
      py::arg("convention") = "forward", "Run a kummer-cert command; returns (exit_code, stdout, stderr).");

  m.def("command_names", &cli::command_names);

  m.def(
      "ell_table",
      [](const std::string& conv) {
        std::map<int, std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> out;
        for (const auto& [k, t] : model::ell_table(model::build_sigma_h1(convention(conv)))) out[k] = triple(t);
        return out;
      },
      py::arg("convention") = "forward");

  m.def(
      "vanishing",
      [](const std::string& conv) {
        std::vector<std::tuple<int, int, std::string>> out;
        for (const auto& e : model::compute_vanishing(model::build_sigma_h1(convention(conv))))
          out.emplace_back(e.p, e.q, e.group.to_string());
        return out;
      },
      py::arg("convention") = "forward");

  m.def("tensor", [](std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> a,
                     std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> b) {
    return triple(green::tensor({std::get<0>(a), std::get<1>(a), std::get<2>(a)},
                                {std::get<0>(b), std::get<1>(b), std::get<2>(b)}));
  });
  m.def("wedge", [](std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> a, std::uint64_t k) {
    return triple(green::wedge({std::get<0>(a), std::get<1>(a), std::get<2>(a)}, k));
  });

  m.def(
      "smith_normal_form",
      [](const Rows& rows) {
        const auto s = linalg::smith_normal_form(to_matrix(rows));
        return py::make_tuple(to_rows(s.u), to_rows(s.d), to_rows(s.v));
      },
      "Entries as decimal strings; returns (u, d, v) with u * m * v == d.");
  m.def("cokernel", [](const Rows& rows) { return linalg::cokernel(to_matrix(rows)).to_string(); });

  m.def(
      "context_json",
      [](const std::string& conv) { return model::build_context(convention(conv)).to_json().dump(); },
      py::arg("convention") = "forward");

  m.def("shipped_script", [] { return std::string(ledger::shipped_script_text()); });
  m.def(
      "check_script",
      [](const std::string& text, bool with_leaf_facts) {
        const auto script = ledger::Script::parse(text);
        std::vector<ledger::Fact> leaves;
        if (with_leaf_facts) leaves = ledger::leaf_facts_from_computation(model::build_context());
        return ledger::check_script(script, leaves).to_json().dump();
      },
      py::arg("text"), py::arg("with_leaf_facts") = true, "Replays a ledger script; returns the report as JSON text.");
}
