#include "sct/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sct/error.hpp"

namespace sct {

static_assert(std::endian::native == std::endian::little, "TFC1 and WAV I/O assume a little-endian host");

namespace {

template <class T>
void put(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw FormatError("unexpected end of data");
    T v;
    std::memcpy(&v, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

std::size_t dtype_bytes(TensorDtype d) { return d == TensorDtype::complex64 ? 8 : 16; }

TensorFileHeader decode_header(const std::string& bytes) {
    if (bytes.size() < TensorFileHeader::kBytes) throw FormatError("file shorter than a TFC1 header");
    if (std::memcmp(bytes.data(), TensorFileHeader::kMagic, 4) != 0) throw FormatError("bad magic, expected TFC1");
    std::size_t pos = 4;
    TensorFileHeader h;
    h.version = get<std::uint16_t>(bytes, pos);
    if (h.version != TensorFileHeader::kVersion) throw FormatError("unsupported TFC1 version " + std::to_string(h.version));
    const auto dt = get<std::uint16_t>(bytes, pos);
    if (dt > 1) throw FormatError("unknown dtype code " + std::to_string(dt));
    h.dtype = static_cast<TensorDtype>(dt);
    h.n_chirp = get<std::uint32_t>(bytes, pos);
    h.n_freq = get<std::uint32_t>(bytes, pos);
    h.n_time = get<std::uint32_t>(bytes, pos);
    h.alpha_sq = get<double>(bytes, pos);
    h.sample_rate_hz = get<double>(bytes, pos);
    h.t0_s = get<double>(bytes, pos);
    return h;
}

}  // namespace

std::string encode_tensor(const TfcTensor& tensor, TensorDtype dtype) {
    const auto& v = tensor.values;
    std::string out;
    out.reserve(TensorFileHeader::kBytes + v.size() * dtype_bytes(dtype));
    out.append(TensorFileHeader::kMagic, 4);
    put<std::uint16_t>(out, TensorFileHeader::kVersion);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(dtype));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(v.n_chirp()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(v.n_freq()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(v.n_time()));
    put<double>(out, tensor.grid.alpha_sq);
    put<double>(out, tensor.grid.sample_rate_hz);
    put<double>(out, tensor.grid.t0_s);
    for (int c = 0; c < v.n_chirp(); ++c) {
        for (int j = 0; j < v.n_freq(); ++j) {
            for (int n = 0; n < v.n_time(); ++n) {
                const cdouble z = v(c, j, n);
                if (dtype == TensorDtype::complex64) {
                    put<float>(out, static_cast<float>(z.real()));
                    put<float>(out, static_cast<float>(z.imag()));
                } else {
                    put<double>(out, z.real());
                    put<double>(out, z.imag());
                }
            }
        }
    }
    return out;
}

TfcTensor decode_tensor(const std::string& bytes) {
    const TensorFileHeader h = decode_header(bytes);
    const std::size_t count = static_cast<std::size_t>(h.n_chirp) * h.n_freq * h.n_time;
    if (bytes.size() != TensorFileHeader::kBytes + count * dtype_bytes(h.dtype)) {
        throw FormatError("payload length does not match the header dimensions");
    }
    if (h.n_chirp % 2 != 0 || h.n_freq != h.n_chirp / 2 + 1 || h.n_chirp == 0 || h.n_time == 0) {
        throw FormatError("dimensions are not a chirplet grid (n_chirp = 2M, n_freq = M + 1)");
    }
    if (!(h.sample_rate_hz > 0.0)) throw FormatError("sample rate must be positive");
    TfcGrid g;
    g.alpha_sq = h.alpha_sq;
    g.M = static_cast<int>(h.n_chirp / 2);
    g.n_time = static_cast<int>(h.n_time);
    g.sample_rate_hz = h.sample_rate_hz;
    g.t0_s = h.t0_s;
    TfcTensor t(g);
    std::size_t pos = TensorFileHeader::kBytes;
    for (std::uint32_t c = 0; c < h.n_chirp; ++c) {
        for (std::uint32_t j = 0; j < h.n_freq; ++j) {
            for (std::uint32_t n = 0; n < h.n_time; ++n) {
                double re, im;
                if (h.dtype == TensorDtype::complex64) {
                    re = get<float>(bytes, pos);
                    im = get<float>(bytes, pos);
                } else {
                    re = get<double>(bytes, pos);
                    im = get<double>(bytes, pos);
                }
                t.values(static_cast<int>(c), static_cast<int>(j), static_cast<int>(n)) = {re, im};
            }
        }
    }
    return t;
}

void write_tensor(const std::filesystem::path& path, const TfcTensor& tensor, TensorDtype dtype) {
    write_file_atomic(path, encode_tensor(tensor, dtype));
}

TfcTensor read_tensor(const std::filesystem::path& path) { return decode_tensor(read_file(path)); }

TensorFileHeader read_tensor_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string buf(TensorFileHeader::kBytes, '\0');
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    buf.resize(static_cast<std::size_t>(in.gcount()));
    return decode_header(buf);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Signal read_raw(const std::filesystem::path& path, double fs, bool complex_samples, double t0_s) {
    const std::string bytes = read_file(path);
    const std::size_t width = complex_samples ? 16 : 8;
    if (bytes.empty() || bytes.size() % width != 0) throw FormatError("raw file length is not a whole number of samples");
    std::vector<cdouble> x(bytes.size() / width);
    std::size_t pos = 0;
    for (auto& z : x) {
        const double re = get<double>(bytes, pos);
        const double im = complex_samples ? get<double>(bytes, pos) : 0.0;
        z = {re, im};
    }
    return Signal(std::move(x), fs, t0_s);
}

namespace {

bool parse_double(std::string_view s, double& v) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

}  // namespace

Signal read_csv_signal(const std::filesystem::path& path, double fs, double t0_s) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<cdouble> x;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<double> vals;
        bool ok = true;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            double v;
            if (!parse_double(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start), v)) {
                ok = false;
                break;
            }
            vals.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!ok) {
            if (x.empty() && width == 0) continue;  // header row
            throw FormatError("non-numeric value on line " + std::to_string(line_no));
        }
        if (vals.size() > 2) throw FormatError("expected one or two columns on line " + std::to_string(line_no));
        if (width == 0) width = vals.size();
        if (vals.size() != width) throw FormatError("inconsistent column count on line " + std::to_string(line_no));
        x.emplace_back(vals[0], width == 2 ? vals[1] : 0.0);
    }
    if (x.empty()) throw FormatError("no samples in " + path.string());
    return Signal(std::move(x), fs, t0_s);
}

Signal read_wav(const std::filesystem::path& path) {
    const std::string b = read_file(path);
    std::size_t pos = 0;
    auto tag = [&](const char* want) {
        if (pos + 4 > b.size()) throw FormatError("truncated WAV header");
        const bool match = std::memcmp(b.data() + pos, want, 4) == 0;
        pos += 4;
        return match;
    };
    if (!tag("RIFF")) throw FormatError("not a RIFF file");
    get<std::uint32_t>(b, pos);
    if (!tag("WAVE")) throw FormatError("not a WAVE file");
    bool have_fmt = false;
    std::uint32_t rate = 0;
    while (pos + 8 <= b.size()) {
        const std::string id = b.substr(pos, 4);
        pos += 4;
        const auto size = get<std::uint32_t>(b, pos);
        if (pos + size > b.size()) throw FormatError("truncated WAV chunk " + id);
        if (id == "fmt ") {
            if (size < 16) throw FormatError("short fmt chunk");
            std::size_t p = pos;
            const auto format = get<std::uint16_t>(b, p);
            const auto channels = get<std::uint16_t>(b, p);
            rate = get<std::uint32_t>(b, p);
            get<std::uint32_t>(b, p);
            get<std::uint16_t>(b, p);
            const auto bits = get<std::uint16_t>(b, p);
            if (format != 1) throw FormatError("only PCM WAV is supported");
            if (channels != 1) throw FormatError("only mono WAV is supported");
            if (bits != 16) throw FormatError("only 16-bit WAV is supported");
            if (rate == 0) throw FormatError("zero sample rate");
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) throw FormatError("data chunk before fmt chunk");
            if (size < 2) throw FormatError("empty data chunk");
            std::vector<cdouble> x(size / 2);
            std::size_t p = pos;
            for (auto& z : x) z = {get<std::int16_t>(b, p) / 32768.0, 0.0};
            return Signal(std::move(x), static_cast<double>(rate));
        }
        pos += size + (size & 1u);
    }
    throw FormatError(have_fmt ? "no data chunk" : "truncated WAV header");
}

Signal read_signal(const std::filesystem::path& path, double fs, double t0_s) {
    const std::string ext = path.extension().string();
    if (ext == ".wav" || ext == ".WAV") return read_wav(path);
    if (ext == ".csv") return read_csv_signal(path, fs, t0_s);
    if (ext == ".cbin") return read_raw(path, fs, true, t0_s);
    if (ext == ".bin" || ext == ".raw") return read_raw(path, fs, false, t0_s);
    throw FormatError("unknown signal extension '" + ext + "' (expected .wav, .csv, .bin, .raw, .cbin)");
}

CsvWriter::CsvWriter(const std::vector<std::string>& columns) : n_cols_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) text_ += ',';
        text_ += columns[i];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_cols_) throw ShapeError("CSV row width does not match the header");
    char buf[32];
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        const auto r = std::to_chars(buf, buf + sizeof(buf), values[i]);
        text_.append(buf, r.ptr);
    }
    text_ += '\n';
}

std::string signal_csv(const Signal& signal) {
    CsvWriter w({"t_s", "re", "im"});
    for (std::size_t n = 0; n < signal.size(); ++n) w.row({signal.time_at(n), signal[n].real(), signal[n].imag()});
    return w.str();
}

}  // namespace sct
