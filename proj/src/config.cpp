// SPDX-License-Identifier: Apache-2.0
//
// hbc-channel: capacitive body-channel modelling toolkit
// Copyright (C) 2026 The hbc-channel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "hbc/config.hpp"
#include "hbc/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>

namespace hbc
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        }
    } // namespace

    std::string format_number(double v)
    {
        char buf[64];
        auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    }

    Config Config::parse(std::istream &is, const std::string &source_name)
    {
        Config cfg;
        std::string line, section;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            const std::string t = trim(line);
            if (t.empty())
                continue;
            const std::string where = source_name + ":" + std::to_string(line_no);
            if (t.front() == '[')
            {
                if (t.back() != ']' || t.size() < 3)
                    throw ConfigError(where + ": malformed section header '" + t + "'");
                section = trim(t.substr(1, t.size() - 2));
                cfg.sections_[section];
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError(where + ": expected 'key = value'");
            if (section.empty())
                throw ConfigError(where + ": key outside of any [section]");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty())
                throw ConfigError(where + ": empty key");
            auto &sec = cfg.sections_[section];
            if (sec.count(key))
                throw ConfigError(where + ": duplicate key '" + section + "." + key + "'");
            sec[key] = value;
        }
        return cfg;
    }

    Config Config::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config '" + path.string() + "'");
        Config cfg = parse(in, path.string());
        cfg.base_dir_ = path.parent_path();
        return cfg;
    }

    bool Config::has(const std::string &section, const std::string &key) const
    {
        auto it = sections_.find(section);
        return it != sections_.end() && it->second.count(key) > 0;
    }

    std::optional<std::string> Config::get(const std::string &section, const std::string &key) const
    {
        auto it = sections_.find(section);
        if (it == sections_.end())
            return std::nullopt;
        auto kt = it->second.find(key);
        if (kt == it->second.end())
            return std::nullopt;
        return kt->second;
    }

    std::optional<double> Config::get_number(const std::string &section, const std::string &key) const
    {
        auto s = get(section, key);
        if (!s)
            return std::nullopt;
        double v = 0.0;
        const char *b = s->data(), *e = s->data() + s->size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || p != e || s->empty())
            throw ConfigError(section + "." + key + ": not a number: '" + *s + "'");
        return v;
    }

    double Config::require_number(const std::string &section, const std::string &key) const
    {
        auto v = get_number(section, key);
        if (!v)
            throw MissingParameterError(section + "." + key);
        return *v;
    }

    std::string Config::require(const std::string &section, const std::string &key) const
    {
        auto v = get(section, key);
        if (!v)
            throw MissingParameterError(section + "." + key);
        return *v;
    }

    bool Config::get_flag(const std::string &section, const std::string &key, bool fallback) const
    {
        auto v = get(section, key);
        if (!v)
            return fallback;
        if (*v == "true" || *v == "1" || *v == "yes")
            return true;
        if (*v == "false" || *v == "0" || *v == "no")
            return false;
        throw ConfigError(section + "." + key + ": expected true/false, got '" + *v + "'");
    }

    void Config::set(const std::string &section, const std::string &key, const std::string &value)
    {
        sections_[section][key] = value;
    }

    void Config::set_number(const std::string &section, const std::string &key, double value)
    {
        set(section, key, format_number(value));
    }

    void Config::erase(const std::string &section, const std::string &key)
    {
        auto it = sections_.find(section);
        if (it != sections_.end())
            it->second.erase(key);
    }

    void Config::erase_section(const std::string &section) { sections_.erase(section); }

    std::vector<std::string> Config::section_names() const
    {
        std::vector<std::string> out;
        for (const auto &[name, _] : sections_)
            out.push_back(name);
        return out;
    }

} // namespace hbc
