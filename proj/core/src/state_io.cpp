#include "qcorr/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcorr/experiment.hpp"

namespace qcorr {

namespace {

void write_re_im(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXcd>& m,
                 const char* indent) {
    const auto rows = m.rows();
    const auto cols = m.cols();
    for (const char* part : {"re", "im"}) {
        const bool re = part[0] == 'r';
        out << indent << '"' << part << "\": [";
        for (Eigen::Index r = 0; r < rows; ++r) {
            out << (r == 0 ? "[" : "         [");
            for (Eigen::Index c = 0; c < cols; ++c) {
                out << format_g17(re ? m(r, c).real() : m(r, c).imag());
                if (c + 1 < cols) out << ", ";
            }
            out << (r + 1 < rows ? "],\n" : "]");
        }
        out << (re ? "],\n" : "]");
    }
}

Eigen::MatrixXcd parse_re_im(const nlohmann::json& j, Eigen::Index dim) {
    if (!j.contains("re") || !j.contains("im"))
        throw ValidationError("state file: object must carry \"re\" and \"im\" keys");
    Eigen::MatrixXcd m(dim, dim);
    for (const char* part : {"re", "im"}) {
        const auto& rows = j.at(part);
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dim))
            throw ValidationError("state file: malformed matrix");
        for (Eigen::Index r = 0; r < dim; ++r) {
            const auto& row = rows.at(static_cast<std::size_t>(r));
            if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
                throw ValidationError("state file: malformed matrix row");
            for (Eigen::Index c = 0; c < dim; ++c) {
                const double v = row.at(static_cast<std::size_t>(c)).get<double>();
                if (part[0] == 'r')
                    m(r, c) = Complex{v, 0};
                else
                    m(r, c) += Complex{0, v};
            }
        }
    }
    return m;
}

nlohmann::json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("cannot parse " + path.string() + ": " + e.what());
    }
    return j;
}

}  // namespace

void write_state(std::ostream& out, const DensityMatrix& rho) {
    out << "{\n";
    write_re_im(out, rho.matrix(), "  ");
    out << "\n}\n";
    if (!out) throw IoError("failed while writing state");
}

void write_state(const std::filesystem::path& path, const DensityMatrix& rho) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_state(out, rho);
}

DensityMatrix read_state(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("cannot parse state: ") + e.what());
    }
    return DensityMatrix::from_matrix(parse_re_im(j, 4));
}

DensityMatrix read_state(const std::filesystem::path& path) {
    return DensityMatrix::from_matrix(parse_re_im(parse_file(path), 4));
}

void write_normal_form_result(std::ostream& out, const NormalFormResult& result) {
    out << "{\n  \"fA\": {";
    write_re_im(out, result.filters.f_a, "");
    out << "},\n  \"fB\": {";
    write_re_im(out, result.filters.f_b, "");
    out << "},\n  \"normal_form\": {\n";
    write_re_im(out, result.normal_form.matrix(), "    ");
    out << "\n  },\n";
    out << "  \"p_succ\": " << format_g17(result.p_succ) << ",\n";
    out << "  \"converged\": " << (result.converged ? "true" : "false") << ",\n";
    out << "  \"iterations\": " << result.iterations << "\n}\n";
    if (!out) throw IoError("failed while writing normal-form result");
}

void write_normal_form_result(const std::filesystem::path& path,
                              const NormalFormResult& result) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_normal_form_result(out, result);
}

NormalFormResult read_normal_form_result(const std::filesystem::path& path) {
    const nlohmann::json j = parse_file(path);
    FilterPair filters;
    filters.f_a = parse_re_im(j.at("fA"), 2);
    filters.f_b = parse_re_im(j.at("fB"), 2);
    const DensityMatrix normal_form = DensityMatrix::from_matrix(parse_re_im(j.at("normal_form"), 4));
    return NormalFormResult{filters, normal_form, j.at("p_succ").get<double>(),
                            j.at("converged").get<bool>(),
                            j.value("iterations", 0)};
}

}  // namespace qcorr
