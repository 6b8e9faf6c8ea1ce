#include "opmod/matrix_io.hpp"

#include <cmath>
#include <fstream>

namespace opmod {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(m.data().size());
    im.reserve(m.data().size());
    for (const auto& v : m.data()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im"))
        throw invalid_input("matrix JSON: expected {rows, cols, re, im}");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != rows * cols || im.size() != rows * cols)
        throw invalid_input("matrix JSON: re/im length does not match rows*cols");
    std::vector<cplx> entries(rows * cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!std::isfinite(re[i]) || !std::isfinite(im[i]))
            throw invalid_input("matrix JSON: NaN/Inf entry rejected");
        entries[i] = cplx(re[i], im[i]);
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

void save_matrix(const ComplexMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << matrix_to_json(m).dump(2) << '\n';
}

ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j;
    in >> j;
    return matrix_from_json(j);
}

} // namespace opmod
