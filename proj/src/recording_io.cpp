// Copyright 2026 The TasteNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tastenet/recording_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "tastenet/errors.hpp"

namespace tastenet::io {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t start = field.find_first_not_of(' ');
    fields.push_back(start == std::string::npos ? std::string() : field.substr(start));
  }
  return fields;
}

}  // namespace

ContinuousRecording read_recording(const std::string& csv_path, const std::string& events_path,
                                   double fs) {
  if (!(fs > 0.0)) throw InputError("recording: fs must be positive");
  std::ifstream csv(csv_path);
  if (!csv) throw InputError("cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(csv, line)) throw InputError(csv_path + ": missing header row");
  ContinuousRecording rec;
  rec.fs = fs;
  rec.channel_names = split_csv(line);
  rec.channels = rec.channel_names.size();
  if (rec.channels == 0) throw InputError(csv_path + ": header names no channels");

  std::vector<std::vector<double>> columns(rec.channels);
  std::size_t row = 1;
  while (std::getline(csv, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != rec.channels) {
      throw InputError(csv_path + ":" + std::to_string(row) + ": expected " +
                       std::to_string(rec.channels) + " columns, got " +
                       std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < rec.channels; ++c) {
      double v = 0.0;
      const std::string& f = fields[c];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw InputError(csv_path + ":" + std::to_string(row) + ": non-numeric value '" + f +
                         "' in column " + rec.channel_names[c]);
      }
      columns[c].push_back(v);
    }
  }
  for (const auto& col : columns) rec.data.insert(rec.data.end(), col.begin(), col.end());

  std::ifstream events(events_path);
  if (!events) throw InputError("cannot open '" + events_path + "'");
  nlohmann::json doc;
  try {
    events >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(events_path + ": " + e.what());
  }
  if (!doc.is_array()) throw InputError(events_path + ": expected a JSON array of events");
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& ev = doc[i];
    const std::string where = events_path + "[" + std::to_string(i) + "]";
    if (!ev.is_object() || !ev.contains("onset_sample") || !ev.contains("label")) {
      throw InputError(where + ": needs onset_sample and label");
    }
    if (!ev["onset_sample"].is_number_unsigned() && !ev["onset_sample"].is_number_integer()) {
      throw InputError(where + ".onset_sample: expected an integer");
    }
    const auto onset = ev["onset_sample"].get<long long>();
    if (onset < 0) throw InputError(where + ".onset_sample: must be non-negative");
    int label = 0;
    if (ev["label"].is_string()) {
      label = taste_label(ev["label"].get<std::string>());
    } else if (ev["label"].is_number_integer()) {
      label = ev["label"].get<int>();
      taste_name(label);
    } else {
      throw InputError(where + ".label: expected a class index or taste name");
    }
    rec.events.push_back({static_cast<std::size_t>(onset), label});
  }
  return rec;
}

void write_recording(const ContinuousRecording& recording, const std::string& csv_path,
                     const std::string& events_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw InputError("cannot open '" + csv_path + "' for writing");
  for (std::size_t c = 0; c < recording.channels; ++c) {
    if (c) csv << ',';
    csv << (c < recording.channel_names.size() ? recording.channel_names[c]
                                               : "ch" + std::to_string(c));
  }
  csv << '\n' << std::setprecision(17);
  const std::size_t n = recording.samples();
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t c = 0; c < recording.channels; ++c) {
      if (c) csv << ',';
      csv << recording.data[c * n + t];
    }
    csv << '\n';
  }
  nlohmann::json doc = nlohmann::json::array();
  for (const RecordingEvent& e : recording.events) {
    doc.push_back({{"onset_sample", e.onset_sample}, {"label", e.label}});
  }
  std::ofstream events(events_path);
  if (!events) throw InputError("cannot open '" + events_path + "' for writing");
  events << doc.dump(2) << '\n';
}

}  // namespace tastenet::io
