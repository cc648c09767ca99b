#include "sealoss/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "sealoss/errors.hpp"

namespace sealoss {

using detail::fail;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<int> parse_digits(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Days since 1970-01-01 in the proleptic Gregorian calendar.
long long days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int>(static_cast<long long>(yoe) + era * 400 + (m <= 2));
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(int y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

}  // namespace

std::optional<double> parse_iso8601_utc(std::string_view text) {
  text = trim(text);
  // YYYY-MM-DDTHH:MM:SS
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  const auto year = parse_digits(text.substr(0, 4));
  const auto month = parse_digits(text.substr(5, 2));
  const auto day = parse_digits(text.substr(8, 2));
  const auto hour = parse_digits(text.substr(11, 2));
  const auto minute = parse_digits(text.substr(14, 2));
  const auto second = parse_digits(text.substr(17, 2));
  if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
  if (*month < 1 || *month > 12 || *day < 1 ||
      static_cast<unsigned>(*day) > days_in_month(*year, static_cast<unsigned>(*month)) ||
      *hour > 23 || *minute > 59 || *second > 60) {
    return std::nullopt;
  }
  std::string_view rest = text.substr(19);
  double fraction = 0.0;
  if (!rest.empty() && rest.front() == '.') {
    std::size_t n = 1;
    while (n < rest.size() && rest[n] >= '0' && rest[n] <= '9') ++n;
    if (n == 1) return std::nullopt;
    const auto parsed = parse_number(std::string("0") + std::string(rest.substr(0, n)));
    if (!parsed) return std::nullopt;
    fraction = *parsed;
    rest.remove_prefix(n);
  }
  if (!(rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000")) return std::nullopt;

  const long long days =
      days_from_civil(*year, static_cast<unsigned>(*month), static_cast<unsigned>(*day));
  return static_cast<double>(days * 86400LL + *hour * 3600LL + *minute * 60LL + *second) +
         fraction;
}

std::string format_iso8601_utc(double seconds) {
  const auto whole = static_cast<long long>(std::floor(seconds));
  long long days = whole / 86400;
  long long rem = whole % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d, rem / 3600,
                (rem / 60) % 60, rem % 60);
  return buf;
}

ParsedLog parse_log(std::istream& in) {
  ParsedLog out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) have_header = true;
  }
  if (!have_header) fail(ErrorCode::EmptyLog, "log has no header line");

  std::string header = line;
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
  const auto columns = split_csv(header);
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < columns.size(); ++i) index.emplace(std::string(columns[i]), i);
  std::size_t col[4];
  const char* required[4] = {"timestamp", "lat", "lon", "rssi_dbm"};
  for (int k = 0; k < 4; ++k) {
    const auto it = index.find(required[k]);
    if (it == index.end()) {
      fail(ErrorCode::HeaderMismatch,
           std::string("missing column '") + required[k] + "' (expected timestamp,lat,lon,rssi_dbm)");
    }
    col[k] = it->second;
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() < columns.size()) {
      out.rejects.push_back({line_no, "expected " + std::to_string(columns.size()) + " columns"});
      continue;
    }
    MeasurementRecord r;
    r.line = line_no;
    const auto ts = parse_iso8601_utc(fields[col[0]]);
    if (!ts) {
      out.rejects.push_back({line_no, "invalid timestamp"});
      continue;
    }
    const auto lat = parse_number(fields[col[1]]);
    const auto lon = parse_number(fields[col[2]]);
    const auto rssi = parse_number(fields[col[3]]);
    if (!lat || !lon || !rssi) {
      out.rejects.push_back({line_no, "invalid number"});
      continue;
    }
    if (!(*lat >= -90.0 && *lat <= 90.0)) {
      out.rejects.push_back({line_no, "latitude out of range"});
      continue;
    }
    if (!(*lon >= -180.0 && *lon <= 180.0)) {
      out.rejects.push_back({line_no, "longitude out of range"});
      continue;
    }
    if (!std::isfinite(*rssi)) {
      out.rejects.push_back({line_no, "non-finite rssi"});
      continue;
    }
    r.timestamp = *ts;
    r.position = {*lat, *lon};
    r.raw_rssi = *rssi;
    out.records.push_back(std::move(r));
  }
  if (out.records.empty()) out.warnings.emplace_back("log contains no measurement rows");
  return out;
}

CalibrationTable::CalibrationTable(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::InvalidArgument, "calibration table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i].reported_rssi) || !std::isfinite(entries_[i].correction)) {
      fail(ErrorCode::InvalidArgument, "calibration entries must be finite");
    }
    if (i > 0 && !(entries_[i].reported_rssi > entries_[i - 1].reported_rssi)) {
      fail(ErrorCode::InvalidArgument, "calibration levels must be strictly increasing");
    }
  }
}

CalibrationTable CalibrationTable::identity() { return CalibrationTable({{0.0, 0.0}}); }

CalibrationTable CalibrationTable::from_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) have_header = true;
  }
  if (!have_header) fail(ErrorCode::EmptyLog, "calibration table has no header");
  const auto columns = split_csv(line);
  std::size_t level_col = columns.size();
  std::size_t corr_col = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == "reported_rssi_dbm") level_col = i;
    if (columns[i] == "correction_db") corr_col = i;
  }
  if (level_col == columns.size() || corr_col == columns.size()) {
    fail(ErrorCode::HeaderMismatch, "expected header reported_rssi_dbm,correction_db");
  }
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    const auto level = fields.size() > level_col ? parse_number(fields[level_col]) : std::nullopt;
    const auto corr = fields.size() > corr_col ? parse_number(fields[corr_col]) : std::nullopt;
    if (!level || !corr) {
      fail(ErrorCode::InvalidArgument, "malformed calibration row at line " + std::to_string(line_no));
    }
    entries.push_back({*level, *corr});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.reported_rssi < b.reported_rssi; });
  return CalibrationTable(std::move(entries));
}

double CalibrationTable::correction_at(double reported_rssi, bool* clamped) const {
  if (clamped) *clamped = false;
  if (entries_.size() == 1 || reported_rssi <= entries_.front().reported_rssi) {
    if (clamped) *clamped = reported_rssi != entries_.front().reported_rssi;
    return entries_.front().correction;
  }
  if (reported_rssi >= entries_.back().reported_rssi) {
    if (clamped) *clamped = reported_rssi != entries_.back().reported_rssi;
    return entries_.back().correction;
  }
  const auto hi = std::upper_bound(
      entries_.begin(), entries_.end(), reported_rssi,
      [](double v, const Entry& e) { return v < e.reported_rssi; });
  const auto lo = hi - 1;
  const double t = (reported_rssi - lo->reported_rssi) / (hi->reported_rssi - lo->reported_rssi);
  return lo->correction + t * (hi->correction - lo->correction);
}

bool CalibrationTable::is_identity() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.correction == 0.0; });
}

bool ExclusionZone::contains(const MeasurementRecord& r) const {
  if (kind == Kind::Time) return r.timestamp >= begin && r.timestamp <= end;
  return r.distance && *r.distance >= begin && *r.distance <= end;
}

void CampaignConfig::validate() const {
  if (!bs_position.valid()) fail(ErrorCode::ConfigError, "base-station position out of range");
  try {
    radio.validate();
    earth.validate();
    sea.validate();
    itu.validate();
    if (log_distance) log_distance->validate();
    LinkGeometry(tx_height, rx_height, 1.0, earth);
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
  if (!(analysis.fit_reference_distance > 0.0)) {
    fail(ErrorCode::ConfigError, "fit reference distance must be positive");
  }
  if (!(analysis.min_distance >= 0.0)) fail(ErrorCode::ConfigError, "min distance must be >= 0");
  for (const auto& z : exclusion_zones) {
    if (!(z.end >= z.begin)) fail(ErrorCode::ConfigError, "exclusion zone ends before it begins");
  }
}

ModelContext CampaignConfig::model_context() const {
  ModelContext ctx;
  ctx.tx_height = tx_height;
  ctx.rx_height = rx_height;
  ctx.frequency = radio.frequency;
  ctx.earth = earth;
  ctx.sea = sea;
  ctx.polarization = polarization;
  ctx.reflection = reflection;
  ctx.itu = itu;
  ctx.log_distance = log_distance;
  return ctx;
}

std::vector<MeasurementRecord> apply_calibration(std::vector<MeasurementRecord> records,
                                                 const CalibrationTable& table) {
  const bool identity = table.is_identity();
  for (auto& r : records) {
    if (r.calibrated_rssi) {
      if (!identity) {
        fail(ErrorCode::AlreadyCalibrated,
             "record at line " + std::to_string(r.line) + " is already calibrated");
      }
      continue;
    }
    bool clamped = false;
    const double correction = table.correction_at(r.raw_rssi, &clamped);
    r.calibrated_rssi = r.raw_rssi + correction;
    r.calibration_clamped = clamped && !identity;
  }
  return records;
}

std::vector<MeasurementRecord> geolocate(std::vector<MeasurementRecord> records,
                                         const CampaignConfig& cfg) {
  if (!cfg.bs_position.valid()) fail(ErrorCode::InvalidArgument, "invalid base-station position");
  for (auto& r : records) {
    r.distance = great_circle_distance(r.position, cfg.bs_position, cfg.earth);
    r.below_minimum = *r.distance <= 0.0 || *r.distance < cfg.analysis.min_distance;
    for (const auto& zone : cfg.exclusion_zones) {
      if (zone.contains(r)) {
        r.excluded = true;
        r.exclusion_label = zone.label;
        break;
      }
    }
  }
  return records;
}

std::vector<MeasurementRecord> rssi_to_pathloss(std::vector<MeasurementRecord> records,
                                                const RadioConfig& radio) {
  for (auto& r : records) {
    if (!r.calibrated_rssi) {
      fail(ErrorCode::MissingCalibration,
           "record at line " + std::to_string(r.line) + " has no calibrated RSSI");
    }
    r.path_loss = radio.tx_power + radio.tx_antenna_gain +
                  (radio.rx_antenna_gain - radio.polarization_loss) - *r.calibrated_rssi;
  }
  return records;
}

SampleSet to_sample_set(const std::vector<MeasurementRecord>& records, std::string source_id) {
  SampleSet set;
  set.source_id = std::move(source_id);
  for (const auto& r : records) {
    if (r.excluded || r.below_minimum || !r.distance || !r.path_loss) continue;
    set.samples.push_back({*r.distance, *r.path_loss});
  }
  if (set.samples.empty()) fail(ErrorCode::NoValidSamples, "no usable samples after filtering");
  std::stable_sort(set.samples.begin(), set.samples.end(),
                   [](const Sample& a, const Sample& b) { return a.distance < b.distance; });
  return set;
}

}  // namespace sealoss
