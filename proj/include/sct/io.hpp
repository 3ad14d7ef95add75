#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sct/signal.hpp"
#include "sct/volume.hpp"

namespace sct {

enum class TensorDtype : std::uint16_t { complex64 = 0, complex128 = 1 };

/// TFC1 file header, little-endian, 36 bytes on disk.
struct TensorFileHeader {
    static constexpr char kMagic[4] = {'T', 'F', 'C', '1'};
    static constexpr std::uint16_t kVersion = 1;
    static constexpr std::size_t kBytes = 4 + 2 + 2 + 3 * 4 + 3 * 8;

    std::uint16_t version = kVersion;
    TensorDtype dtype = TensorDtype::complex128;
    std::uint32_t n_chirp = 0;
    std::uint32_t n_freq = 0;
    std::uint32_t n_time = 0;
    double alpha_sq = 0.0;
    double sample_rate_hz = 1.0;
    double t0_s = 0.0;
};

/// Serializes the tensor as header + complex interleaved payload in
/// (chirp, freq, time) C order. Throws IoError if the file cannot be written.
std::string encode_tensor(const TfcTensor& tensor, TensorDtype dtype = TensorDtype::complex128);
void write_tensor(const std::filesystem::path& path, const TfcTensor& tensor,
                  TensorDtype dtype = TensorDtype::complex128);

/// Throws FormatError on a bad magic, version, dtype or payload length.
TfcTensor decode_tensor(const std::string& bytes);
TfcTensor read_tensor(const std::filesystem::path& path);
TensorFileHeader read_tensor_header(const std::filesystem::path& path);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

/// Raw little-endian samples: float64 real, or interleaved complex128.
Signal read_raw(const std::filesystem::path& path, double fs, bool complex_samples, double t0_s = 0.0);

/// CSV with either one column (real) or two columns (re, im); an optional
/// header line is skipped when it does not parse as numbers.
Signal read_csv_signal(const std::filesystem::path& path, double fs, double t0_s = 0.0);

/// Mono 16-bit PCM WAV; samples scaled by 1/32768 to [-1, 1).
/// Throws FormatError on any other encoding or a truncated file.
Signal read_wav(const std::filesystem::path& path);

/// Chooses the reader from the extension: .wav, .csv, .bin/.raw (float64 real),
/// .cbin (complex128). `fs` is ignored for WAV.
Signal read_signal(const std::filesystem::path& path, double fs, double t0_s = 0.0);

/// Minimal CSV builder: a header row, then rows of numbers printed with
/// enough digits to round-trip.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    [[nodiscard]] const std::string& str() const noexcept { return text_; }

private:
    std::size_t n_cols_;
    std::string text_;
};

/// CSV of a signal: t_s, re, im.
std::string signal_csv(const Signal& signal);

}  // namespace sct
