// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/compose/mp4.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <vector>

#include <jpeglib.h>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

// ---------------------------------------------------------------- JPEG ----

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    jmp_buf env;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_trampoline(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    longjmp(err->env, 1);
}

// ----------------------------------------------------------- box writing --

void put_u16(std::string& s, uint32_t v) {
    s += static_cast<char>((v >> 8) & 0xff);
    s += static_cast<char>(v & 0xff);
}

void put_u24(std::string& s, uint32_t v) {
    s += static_cast<char>((v >> 16) & 0xff);
    s += static_cast<char>((v >> 8) & 0xff);
    s += static_cast<char>(v & 0xff);
}

void put_u32(std::string& s, uint32_t v) {
    s += static_cast<char>((v >> 24) & 0xff);
    put_u24(s, v & 0xffffff);
}

std::string box(const char* type, const std::string& payload) {
    std::string s;
    put_u32(s, static_cast<uint32_t>(payload.size() + 8));
    s.append(type, 4);
    s += payload;
    return s;
}

void put_matrix(std::string& s) {
    const uint32_t unity[9] = {0x00010000, 0, 0, 0, 0x00010000, 0, 0, 0, 0x40000000};
    for (uint32_t v : unity) put_u32(s, v);
}

// MPEG-4 descriptor with a one-byte length; all ours are tiny.
std::string descriptor(uint8_t tag, const std::string& payload) {
    std::string s;
    s += static_cast<char>(tag);
    s += static_cast<char>(payload.size());
    s += payload;
    return s;
}

std::string esds_box() {
    std::string dec_cfg;
    dec_cfg += static_cast<char>(0x6C);  // objectTypeIndication: JPEG (ISO 10918-1)
    dec_cfg += static_cast<char>(0x11);  // streamType visual, reserved bit
    put_u24(dec_cfg, 0);                 // bufferSizeDB
    put_u32(dec_cfg, 0);                 // maxBitrate
    put_u32(dec_cfg, 0);                 // avgBitrate

    std::string es;
    put_u16(es, 1);                      // ES_ID
    es += static_cast<char>(0);          // stream dependence / URL / OCR flags
    es += descriptor(0x04, dec_cfg);
    es += descriptor(0x06, std::string(1, static_cast<char>(0x02)));

    std::string payload;
    put_u32(payload, 0);  // version + flags
    payload += descriptor(0x03, es);
    return box("esds", payload);
}

std::string hdlr_box(const char* handler, const char* name) {
    std::string p;
    put_u32(p, 0);
    put_u32(p, 0);
    p.append(handler, 4);
    put_u32(p, 0);
    put_u32(p, 0);
    put_u32(p, 0);
    p += name;
    p += '\0';
    return box("hdlr", p);
}

std::string dinf_box() {
    std::string url;
    put_u32(url, 1);  // flag: media data in this file
    std::string dref;
    put_u32(dref, 0);
    put_u32(dref, 1);
    dref += box("url ", url);
    return box("dinf", box("dref", dref));
}

std::string tkhd_box(uint32_t track_id, uint32_t duration_ms, uint32_t width, uint32_t height,
                     bool audio) {
    std::string p;
    put_u32(p, 0x00000003);  // version 0, enabled + in movie
    put_u32(p, 0);           // creation
    put_u32(p, 0);           // modification
    put_u32(p, track_id);
    put_u32(p, 0);
    put_u32(p, duration_ms);
    put_u32(p, 0);
    put_u32(p, 0);
    put_u16(p, 0);                     // layer
    put_u16(p, 0);                     // alternate group
    put_u16(p, audio ? 0x0100 : 0);    // volume
    put_u16(p, 0);
    put_matrix(p);
    put_u32(p, width << 16);
    put_u32(p, height << 16);
    return box("tkhd", p);
}

std::string mdhd_box(uint32_t timescale, uint32_t duration) {
    std::string p;
    put_u32(p, 0);
    put_u32(p, 0);
    put_u32(p, 0);
    put_u32(p, timescale);
    put_u32(p, duration);
    put_u16(p, 0x55C4);  // language "und"
    put_u16(p, 0);
    return box("mdhd", p);
}

std::string stts_box(uint32_t count, uint32_t delta) {
    std::string p;
    put_u32(p, 0);
    put_u32(p, 1);
    put_u32(p, count);
    put_u32(p, delta);
    return box("stts", p);
}

std::string stsc_box(uint32_t samples_per_chunk) {
    std::string p;
    put_u32(p, 0);
    put_u32(p, 1);
    put_u32(p, 1);  // first_chunk
    put_u32(p, samples_per_chunk);
    put_u32(p, 1);  // sample description index
    return box("stsc", p);
}

std::string stsz_box(uint32_t uniform_size, const std::vector<uint32_t>& sizes, uint32_t count) {
    std::string p;
    put_u32(p, 0);
    put_u32(p, uniform_size);
    put_u32(p, count);
    if (uniform_size == 0) {
        for (uint32_t s : sizes) put_u32(p, s);
    }
    return box("stsz", p);
}

std::string stco_box(uint32_t offset) {
    std::string p;
    put_u32(p, 0);
    put_u32(p, 1);
    put_u32(p, offset);
    return box("stco", p);
}

// ----------------------------------------------------------- box reading --

uint16_t rd_u16(std::string_view s, size_t at) {
    return static_cast<uint16_t>((static_cast<unsigned char>(s[at]) << 8) |
                                 static_cast<unsigned char>(s[at + 1]));
}

uint32_t rd_u32(std::string_view s, size_t at) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<unsigned char>(s[at + i]);
    return v;
}

uint64_t rd_u64(std::string_view s, size_t at) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<unsigned char>(s[at + i]);
    return v;
}

struct BoxView {
    std::string type;
    std::string_view payload;
};

std::vector<BoxView> child_boxes(std::string_view data) {
    std::vector<BoxView> out;
    size_t pos = 0;
    while (pos + 8 <= data.size()) {
        uint64_t size = rd_u32(data, pos);
        std::string type(data.substr(pos + 4, 4));
        size_t header = 8;
        if (size == 1) {
            if (pos + 16 > data.size()) throw IoError("truncated large box");
            size = rd_u64(data, pos + 8);
            header = 16;
        } else if (size == 0) {
            size = data.size() - pos;
        }
        if (size < header || pos + size > data.size()) {
            throw IoError("corrupt container box '" + type + "'");
        }
        out.push_back({type, data.substr(pos + header, static_cast<size_t>(size) - header)});
        pos += static_cast<size_t>(size);
    }
    return out;
}

std::optional<std::string_view> find_box(std::string_view data, const char* type) {
    for (const auto& b : child_boxes(data)) {
        if (b.type == type) return b.payload;
    }
    return std::nullopt;
}

std::string_view need_box(std::string_view data, const char* type) {
    auto b = find_box(data, type);
    if (!b) throw IoError(std::string("container is missing a '") + type + "' box");
    return *b;
}

struct TrackInfo {
    std::string handler;
    std::string format;
    uint32_t timescale = 0;
    uint32_t stts_delta = 0;
    std::vector<uint64_t> offsets;
    std::vector<uint32_t> sizes;
};

TrackInfo parse_track(std::string_view trak) {
    TrackInfo t;
    const auto mdia = need_box(trak, "mdia");
    const auto mdhd = need_box(mdia, "mdhd");
    if (mdhd.size() < 20) throw IoError("short mdhd box");
    t.timescale = rd_u32(mdhd, 12);

    const auto hdlr = need_box(mdia, "hdlr");
    if (hdlr.size() < 12) throw IoError("short hdlr box");
    t.handler = std::string(hdlr.substr(8, 4));

    const auto minf = need_box(mdia, "minf");
    const auto stbl = need_box(minf, "stbl");

    const auto stsd = need_box(stbl, "stsd");
    if (stsd.size() < 16 || rd_u32(stsd, 4) < 1) throw IoError("empty stsd box");
    t.format = std::string(stsd.substr(12, 4));

    const auto stts = need_box(stbl, "stts");
    if (stts.size() >= 16 && rd_u32(stts, 4) >= 1) t.stts_delta = rd_u32(stts, 12);

    const auto stsz = need_box(stbl, "stsz");
    if (stsz.size() < 12) throw IoError("short stsz box");
    const uint32_t uniform = rd_u32(stsz, 4);
    const uint32_t sample_count = rd_u32(stsz, 8);
    t.sizes.reserve(sample_count);
    for (uint32_t i = 0; i < sample_count; ++i) {
        if (uniform != 0) {
            t.sizes.push_back(uniform);
        } else {
            if (stsz.size() < 12 + 4 * (static_cast<size_t>(i) + 1)) {
                throw IoError("truncated stsz table");
            }
            t.sizes.push_back(rd_u32(stsz, 12 + 4 * static_cast<size_t>(i)));
        }
    }

    const auto stco = need_box(stbl, "stco");
    const uint32_t chunk_count = stco.size() >= 8 ? rd_u32(stco, 4) : 0;
    std::vector<uint64_t> chunk_offsets;
    for (uint32_t i = 0; i < chunk_count; ++i) {
        chunk_offsets.push_back(rd_u32(stco, 8 + 4 * static_cast<size_t>(i)));
    }

    const auto stsc = need_box(stbl, "stsc");
    struct StscEntry {
        uint32_t first_chunk, samples_per_chunk;
    };
    std::vector<StscEntry> mapping;
    const uint32_t stsc_count = stsc.size() >= 8 ? rd_u32(stsc, 4) : 0;
    for (uint32_t i = 0; i < stsc_count; ++i) {
        const size_t at = 8 + 12 * static_cast<size_t>(i);
        mapping.push_back({rd_u32(stsc, at), rd_u32(stsc, at + 4)});
    }

    // Lay samples out chunk by chunk.
    size_t sample = 0;
    for (uint32_t chunk = 1; chunk <= chunk_count && sample < t.sizes.size(); ++chunk) {
        uint32_t per_chunk = 0;
        for (const auto& e : mapping) {
            if (e.first_chunk <= chunk) per_chunk = e.samples_per_chunk;
        }
        uint64_t at = chunk_offsets[chunk - 1];
        for (uint32_t k = 0; k < per_chunk && sample < t.sizes.size(); ++k, ++sample) {
            t.offsets.push_back(at);
            at += t.sizes[sample];
        }
    }
    if (t.offsets.size() != t.sizes.size()) {
        throw IoError("sample table does not cover every sample");
    }
    return t;
}

}  // namespace

std::string encode_jpeg(const ImageBuffer& img, int quality) {
    if (img.width <= 0 || img.height <= 0 || (img.channels != 1 && img.channels != 3)) {
        throw IoError("encode_jpeg: unsupported image shape");
    }
    jpeg_compress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_trampoline;
    unsigned char* out = nullptr;
    unsigned long out_size = 0;
    if (setjmp(jerr.env)) {
        jpeg_destroy_compress(&cinfo);
        free(out);
        throw IoError(std::string("jpeg encode failed: ") + jerr.message);
    }
    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &out, &out_size);
    cinfo.image_width = static_cast<JDIMENSION>(img.width);
    cinfo.image_height = static_cast<JDIMENSION>(img.height);
    cinfo.input_components = img.channels;
    cinfo.in_color_space = img.channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    const size_t stride = static_cast<size_t>(img.width) * img.channels;
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(&img.pixels[cinfo.next_scanline * stride]);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    std::string bytes(reinterpret_cast<char*>(out), out_size);
    jpeg_destroy_compress(&cinfo);
    free(out);
    return bytes;
}

ImageBuffer decode_jpeg(std::string_view bytes) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_trampoline;
    if (setjmp(jerr.env)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(std::string("jpeg decode failed: ") + jerr.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, reinterpret_cast<const unsigned char*>(bytes.data()),
                 static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    ImageBuffer img(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height),
                    cinfo.output_components);
    const size_t stride = static_cast<size_t>(img.width) * img.channels;
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = &img.pixels[cinfo.output_scanline * stride];
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

std::string mux_mp4(const FrameSequence& video, const AudioSegment* audio, int jpeg_quality) {
    if (video.frames.empty()) throw Error("mux_mp4: no video frames");
    if (video.fps <= 0) throw Error("mux_mp4: fps must be positive");
    const bool has_audio = audio != nullptr && !audio->samples.empty();
    const ImageBuffer& first = video.frames.front();

    std::vector<std::string> jpegs;
    jpegs.reserve(video.frames.size());
    std::vector<uint32_t> jpeg_sizes;
    uint64_t video_bytes = 0;
    for (const auto& f : video.frames) {
        if (!f.same_shape(first)) throw Error("mux_mp4: frames differ in geometry");
        jpegs.push_back(encode_jpeg(f, jpeg_quality));
        jpeg_sizes.push_back(static_cast<uint32_t>(jpegs.back().size()));
        video_bytes += jpegs.back().size();
    }

    std::string pcm;
    if (has_audio) {
        pcm.reserve(audio->samples.size() * 2);
        for (float s : audio->samples) {
            const float clamped = std::clamp(s, -1.0f, 1.0f);
            const auto v = static_cast<int16_t>(std::lrintf(clamped * 32767.0f));
            pcm += static_cast<char>(v & 0xff);
            pcm += static_cast<char>((v >> 8) & 0xff);
        }
    }

    std::string ftyp_payload = "isom";
    put_u32(ftyp_payload, 0x200);
    ftyp_payload += "isom";
    ftyp_payload += "mp41";
    const std::string ftyp = box("ftyp", ftyp_payload);

    const uint32_t video_offset = static_cast<uint32_t>(ftyp.size() + 8);
    const uint32_t audio_offset = static_cast<uint32_t>(video_offset + video_bytes);

    const uint32_t frame_count = static_cast<uint32_t>(video.frames.size());
    const uint32_t video_timescale = 90000;
    const uint32_t delta = static_cast<uint32_t>(std::llround(video_timescale / video.fps));
    const double video_dur_s = video.duration_s();
    const double audio_dur_s = has_audio ? audio->duration_s() : 0.0;
    const double movie_dur_s = std::max(video_dur_s, audio_dur_s);

    // --- video track ---
    std::string mp4v;
    mp4v.append(6, '\0');
    put_u16(mp4v, 1);  // data reference index
    put_u16(mp4v, 0);
    put_u16(mp4v, 0);
    put_u32(mp4v, 0);
    put_u32(mp4v, 0);
    put_u32(mp4v, 0);
    put_u16(mp4v, static_cast<uint32_t>(first.width));
    put_u16(mp4v, static_cast<uint32_t>(first.height));
    put_u32(mp4v, 0x00480000);  // 72 dpi
    put_u32(mp4v, 0x00480000);
    put_u32(mp4v, 0);
    put_u16(mp4v, 1);           // frames per sample
    mp4v.append(32, '\0');      // compressor name
    put_u16(mp4v, 24);          // depth
    put_u16(mp4v, 0xffff);      // pre_defined = -1
    mp4v += esds_box();

    std::string stsd_v;
    put_u32(stsd_v, 0);
    put_u32(stsd_v, 1);
    stsd_v += box("mp4v", mp4v);

    std::string vmhd;
    put_u32(vmhd, 1);
    put_u16(vmhd, 0);
    put_u16(vmhd, 0);
    put_u16(vmhd, 0);
    put_u16(vmhd, 0);

    std::string stbl_v = box("stsd", stsd_v) + stts_box(frame_count, delta) +
                         stsc_box(frame_count) + stsz_box(0, jpeg_sizes, frame_count) +
                         stco_box(video_offset);
    std::string minf_v = box("vmhd", vmhd) + dinf_box() + box("stbl", stbl_v);
    std::string mdia_v =
        mdhd_box(video_timescale, delta * frame_count) + hdlr_box("vide", "VideoHandler") +
        box("minf", minf_v);
    std::string trak_v =
        tkhd_box(1, static_cast<uint32_t>(std::llround(video_dur_s * 1000)),
                 static_cast<uint32_t>(first.width), static_cast<uint32_t>(first.height), false) +
        box("mdia", mdia_v);

    std::string moov_payload;
    {
        std::string mvhd;
        put_u32(mvhd, 0);
        put_u32(mvhd, 0);
        put_u32(mvhd, 0);
        put_u32(mvhd, 1000);
        put_u32(mvhd, static_cast<uint32_t>(std::llround(movie_dur_s * 1000)));
        put_u32(mvhd, 0x00010000);  // rate
        put_u16(mvhd, 0x0100);      // volume
        put_u16(mvhd, 0);
        put_u32(mvhd, 0);
        put_u32(mvhd, 0);
        put_matrix(mvhd);
        for (int i = 0; i < 6; ++i) put_u32(mvhd, 0);
        put_u32(mvhd, has_audio ? 3 : 2);  // next track id
        moov_payload = box("mvhd", mvhd) + box("trak", trak_v);
    }

    if (has_audio) {
        const uint32_t n = static_cast<uint32_t>(audio->samples.size());
        std::string sowt;
        sowt.append(6, '\0');
        put_u16(sowt, 1);  // data reference index
        put_u16(sowt, 0);  // version
        put_u16(sowt, 0);  // revision
        put_u32(sowt, 0);  // vendor
        put_u16(sowt, 1);  // channels
        put_u16(sowt, 16);
        put_u16(sowt, 0);
        put_u16(sowt, 0);
        put_u32(sowt, static_cast<uint32_t>(audio->sample_rate) << 16);

        std::string stsd_a;
        put_u32(stsd_a, 0);
        put_u32(stsd_a, 1);
        stsd_a += box("sowt", sowt);

        std::string smhd;
        put_u32(smhd, 0);
        put_u16(smhd, 0);
        put_u16(smhd, 0);

        std::string stbl_a = box("stsd", stsd_a) + stts_box(n, 1) + stsc_box(n) +
                             stsz_box(2, {}, n) + stco_box(audio_offset);
        std::string minf_a = box("smhd", smhd) + dinf_box() + box("stbl", stbl_a);
        std::string mdia_a = mdhd_box(static_cast<uint32_t>(audio->sample_rate), n) +
                             hdlr_box("soun", "SoundHandler") + box("minf", minf_a);
        std::string trak_a =
            tkhd_box(2, static_cast<uint32_t>(std::llround(audio_dur_s * 1000)), 0, 0, true) +
            box("mdia", mdia_a);
        moov_payload += box("trak", trak_a);
    }

    std::string mdat_payload;
    mdat_payload.reserve(static_cast<size_t>(video_bytes) + pcm.size());
    for (const auto& j : jpegs) mdat_payload += j;
    mdat_payload += pcm;

    return ftyp + box("mdat", mdat_payload) + box("moov", moov_payload);
}

void write_mp4(const std::filesystem::path& path, const FrameSequence& video,
               const AudioSegment* audio, int jpeg_quality) {
    const std::string bytes = mux_mp4(video, audio, jpeg_quality);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw IoError("cannot write video: " + path.string());
    }
}

Mp4Media demux_mp4(std::string_view bytes) {
    Mp4Media media;
    const auto moov = find_box(bytes, "moov");
    if (!moov) throw IoError("container has no moov box");

    const auto mvhd = need_box(*moov, "mvhd");
    if (mvhd.size() >= 20) {
        const uint32_t timescale = rd_u32(mvhd, 12);
        const uint32_t duration = rd_u32(mvhd, 16);
        if (timescale > 0) {
            media.declared_duration_s = static_cast<double>(duration) / timescale;
        }
    }

    for (const auto& b : child_boxes(*moov)) {
        if (b.type != "trak") continue;
        const TrackInfo t = parse_track(b.payload);
        if (t.handler == "vide") {
            if (t.stts_delta == 0 || t.timescale == 0) throw IoError("video track lacks timing");
            media.video.fps = static_cast<double>(t.timescale) / t.stts_delta;
            media.video.frames.reserve(t.sizes.size());
            for (size_t i = 0; i < t.sizes.size(); ++i) {
                if (t.offsets[i] + t.sizes[i] > bytes.size()) {
                    throw IoError("video sample outside the file");
                }
                media.video.frames.push_back(
                    decode_jpeg(bytes.substr(t.offsets[i], t.sizes[i])));
            }
        } else if (t.handler == "soun") {
            if (t.format != "sowt") {
                throw IoError("unsupported audio format '" + t.format + "'");
            }
            media.has_audio = true;
            media.audio.sample_rate = static_cast<int>(t.timescale);
            media.audio.samples.reserve(t.sizes.size());
            for (size_t i = 0; i < t.sizes.size(); ++i) {
                if (t.sizes[i] != 2 || t.offsets[i] + 2 > bytes.size()) {
                    throw IoError("bad PCM sample table");
                }
                const auto lo = static_cast<unsigned char>(bytes[t.offsets[i]]);
                const auto hi = static_cast<unsigned char>(bytes[t.offsets[i] + 1]);
                const auto v = static_cast<int16_t>(lo | (hi << 8));
                media.audio.samples.push_back(static_cast<float>(v) / 32767.0f);
            }
        }
    }
    if (media.video.frames.empty()) throw IoError("container has no video frames");
    return media;
}

Mp4Media read_mp4(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open video: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return demux_mp4(bytes);
}

}  // namespace speaking
