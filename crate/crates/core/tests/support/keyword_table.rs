//! Keyword rows of the published keyword tables (descriptive and
//! permission-based), lowercased, as data type id and phrases.

pub const KEYWORD_TABLE: &[(&str, &[&str])] = &[
    ("Name", &["name"]),
    ("EmailAddress", &["email"]),
    ("UserId", &["uid", "user id"]),
    ("Address", &["home address", "city", "country", "zip code"]),
    ("PhoneNumber", &["phone", "default dialer"]),
    (
        "RaceAndEthnicity",
        &["race", "ethnicity", "african", "indian", "asian"],
    ),
    ("PoliticalOrReligiousBeliefs", &["political", "religious"]),
    (
        "SexualOrientation",
        &[
            "sexual orientation",
            "gay",
            "lesbian",
            "transgender",
            "bisexual",
            "queer",
        ],
    ),
    (
        "OtherPersonalInfo",
        &[
            "birth",
            "nationality",
            "gender",
            "male",
            "female",
            "non-binary",
            "veteran",
        ],
    ),
    (
        "UserPaymentInfo",
        &[
            "credit card",
            "billing",
            "cvv",
            "routing number",
            "account number",
            "bank",
        ],
    ),
    ("PurchaseHistory", &["purchase"]),
    ("CreditScore", &["credit score"]),
    ("OtherFinancialInfo", &["salary", "debt"]),
    ("CalendarEvents", &["calendar", "attendee"]),
    ("Photos", &["photo", "barcode", "image", "picture", "media"]),
    ("Videos", &["video", "recording", "media"]),
    (
        "Contacts",
        &["contact", "call history", "interaction duration"],
    ),
    (
        "ApproximateLocation",
        &["location", "city", "country", "ip address"],
    ),
    ("PreciseLocation", &["location", "latitude", "longitude"]),
    (
        "HealthInfo",
        &[
            "health",
            "medical",
            "medicine",
            "symptom",
            "disease",
            "doctor",
            "physician",
            "sleep",
            "wellness",
            "therapist",
            "emergency",
            "emergencies",
            "period",
            "pregnancy",
        ],
    ),
    (
        "FitnessInfo",
        &[
            "fitness",
            "exercise",
            "workout",
            "sport",
            "diet",
            "nutrition",
        ],
    ),
    ("Emails", &["email", "sender", "recipient", "subject"]),
    (
        "SmsOrMms",
        &["message", "sms", "mms", "sender", "recipient", "subject"],
    ),
    (
        "InAppMessages",
        &[
            "message",
            "chat",
            "reply",
            "replies",
            "comment",
            "sender",
            "recipient",
            "subject",
        ],
    ),
    (
        "DeviceOrOtherIds",
        &[
            "mac address",
            "widevine",
            "device id",
            "instance id",
            "app id",
            "advertising id",
            "fingerprint",
            "user agent",
            "unique id",
            "token",
            "advertisingidclient",
        ],
    ),
    (
        "FilesAndDocs",
        &[
            "file", "document", "backup", "restore", "download", "storage", "media",
        ],
    ),
    ("VoiceOrSoundRecordings", &["voice", "sound", "recording"]),
    ("MusicFiles", &["music", "song"]),
    ("OtherUserAudioFiles", &[]),
    (
        "AppInteractions",
        &[
            "selected",
            "visit number",
            "view number",
            "getitematposition",
            "getitemidatposition",
            "accessibilityservice",
            "textservice",
            "instrumentation",
            "shortcut",
        ],
    ),
    ("InstalledApps", &["installed app"]),
    ("InAppSearchHistory", &["search"]),
    ("OtherUserGeneratedContent", &["bios", "note", "response"]),
    ("OtherUserActivities", &["gameplay", "dialog option"]),
    (
        "WebBrowsingHistory",
        &[
            "browser",
            "cookie",
            "browser cache",
            "browsing cache",
            "search",
            "web view",
        ],
    ),
    ("CrashLogs", &["crash", "stack trace"]),
    (
        "Diagnostics",
        &[
            "activitymanager",
            "applicationerrorreport",
            "applicationexitinfo",
            "batterymanager",
            "benchmark",
            "debug",
            "healthstats",
            "macrobenchmark",
            "powermanager",
            "strictmode",
            "battery",
            "loading time",
            "latency",
            "frame rate",
            "diagnostics",
        ],
    ),
    ("OtherAppPerformanceData", &["performance"]),
    ("Name", &["bind_autofill_service", "get_accounts"]),
    ("EmailAddress", &["bind_autofill_service", "get_accounts"]),
    ("UserId", &["bind_autofill_service", "get_accounts"]),
    ("Address", &["bind_autofill_service", "get_accounts"]),
    (
        "PhoneNumber",
        &[
            "bind_autofill_service",
            "get_accounts",
            "read_call_log",
            "read_phone_numbers",
            "read_phone_state",
            "read_sms",
        ],
    ),
    (
        "RaceAndEthnicity",
        &["bind_autofill_service", "get_accounts"],
    ),
    (
        "PoliticalOrReligiousBeliefs",
        &["bind_autofill_service", "get_accounts"],
    ),
    (
        "SexualOrientation",
        &["bind_autofill_service", "get_accounts"],
    ),
    (
        "OtherPersonalInfo",
        &["bind_autofill_service", "get_accounts"],
    ),
    ("UserPaymentInfo", &["bind_autofill_service"]),
    ("PurchaseHistory", &[]),
    ("CreditScore", &[]),
    ("OtherFinancialInfo", &[]),
    ("CalendarEvents", &["read_calendar", "write_calendar"]),
    (
        "Photos",
        &["read_external_storage", "write_external_storage"],
    ),
    (
        "Videos",
        &["read_external_storage", "write_external_storage"],
    ),
    (
        "Contacts",
        &[
            "accept_handover",
            "add_voicemail",
            "answer_phone_calls",
            "call_phone",
            "process_outgoing_calls",
            "read_call_log",
            "read_contacts",
            "read_phone_numbers",
            "read_phone_state",
            "read_sms",
            "receive_mms",
            "receive_sms",
            "receive_wap_push",
            "send_sms",
            "write_contacts",
        ],
    ),
    (
        "ApproximateLocation",
        &["access_coarse_location", "access_media_location"],
    ),
    (
        "PreciseLocation",
        &["access_fine_location", "access_media_location"],
    ),
    ("HealthInfo", &["activity_recognition", "body_sensors"]),
    ("FitnessInfo", &["activity_recognition", "body_sensors"]),
    ("Emails", &[]),
    (
        "SmsOrMms",
        &[
            "read_sms",
            "receive_mms",
            "receive_sms",
            "receive_wap_push",
            "send_sms",
            "write_sms",
        ],
    ),
    ("InAppMessages", &[]),
    (
        "DeviceOrOtherIds",
        &["ad_id", "read_privileged_phone_state"],
    ),
    (
        "FilesAndDocs",
        &[
            "read_external_storage",
            "write_external_storage",
            "manage_external_storage",
        ],
    ),
    (
        "VoiceOrSoundRecordings",
        &[
            "capture_audio_output",
            "record_audio",
            "read_external_storage",
            "write_external_storage",
        ],
    ),
    (
        "MusicFiles",
        &["read_external_storage", "write_external_storage"],
    ),
    (
        "OtherUserAudioFiles",
        &[
            "capture_audio_output",
            "record_audio",
            "read_external_storage",
            "write_external_storage",
        ],
    ),
    ("AppInteractions", &["query_all_packages"]),
    ("InstalledApps", &[]),
    ("InAppSearchHistory", &[]),
    ("OtherUserGeneratedContent", &[]),
    ("OtherUserActivities", &[]),
    ("WebBrowsingHistory", &[]),
    ("CrashLogs", &[]),
    ("Diagnostics", &["battery_stats"]),
    ("OtherAppPerformanceData", &[]),
];
