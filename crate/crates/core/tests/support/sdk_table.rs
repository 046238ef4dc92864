//! The 58 SDKs detected out of the box, with their Maven coordinate
//! patterns, transcribed from the published list. The ML Kit row is split
//! into its Google Play services and standalone halves.

pub const SDK_TABLE: &[(&str, &[&str])] = &[
    (
        "AdMob",
        &[
            ".*com.google.android.gms:play-services-ads.*",
            ".*com.google.android.gms:play-services-ads-lite.*",
        ],
    ),
    ("Ironsource", &[".*com.ironsource.sdk:mediationsdk.*"]),
    ("Vungle", &[".*com.vungle:publisher-sdk-android.*"]),
    ("AppsFlyer", &[".*com.appsflyer:af-android-sdk.*"]),
    (
        "Adjust",
        &[
            ".*com.adjust.sdk:adjust-android.*",
            ".*com.android.installreferrer:installreferrer.*",
            ".*com.adjust.sdk:adjust-android-webbridge.*",
        ],
    ),
    ("Chartboost", &[".*com.chartboost:chartboost-sdk.*"]),
    ("Tapjoy", &[".*com.tapjoy:tapjoy-android-sdk.*"]),
    (
        "Google Play Games Services",
        &[".*com.google.android.gms:play-services-games.*"],
    ),
    (
        "Firebase Authentication",
        &[
            ".*com.google.firebase:firebase-auth.*",
            ".*com.google.firebase:firebase-auth-ktx.*",
        ],
    ),
    (
        "Firebase App Check",
        &[
            ".*com.google.firebase:firebase-appcheck.*",
            ".*com.google.firebase:firebase-appcheck-debug.*",
            ".*com.google.firebase:firebase-appcheck-safetynet.*",
            ".*com.google.firebase:firebase-appcheck-playintegrity.*",
        ],
    ),
    (
        "Firebase Cloud Firestore",
        &[
            ".*com.google.firebase:firebase-firestore.*",
            ".*com.google.firebase:firebase-firestore-ktx.*",
        ],
    ),
    (
        "Cloud Functions for Firebase",
        &[
            ".*com.google.firebase:firebase-functions.*",
            ".*com.google.firebase:firebase-functions-ktx.*",
        ],
    ),
    (
        "Firebase Cloud Messaging",
        &[
            ".*com.google.firebase:firebase-messaging.*",
            ".*com.google.firebase:firebase-messaging-ktx.*",
        ],
    ),
    (
        "Cloud Storage for Firebase",
        &[
            ".*com.google.firebase:firebase-storage.*",
            ".*com.google.firebase:firebase-storage-ktx.*",
        ],
    ),
    (
        "Crashlytics",
        &[
            ".*com.google.firebase:firebase-crashlytics.*",
            ".*com.google.firebase:firebase-crashlytics-ktx.*",
            ".*com.google.firebase:firebase-crashlytics-ndk.*",
        ],
    ),
    (
        "Dynamic Links",
        &[
            ".*com.google.firebase:firebase-dynamic-links.*",
            ".*com.google.firebase:firebase-dynamic-links-ktx.*",
        ],
    ),
    (
        "Google Analytics",
        &[
            ".*com.google.firebase:firebase-analytics.*",
            ".*com.google.firebase:firebase-analytics-ktx.*",
        ],
    ),
    (
        "Firebase In-App Messaging",
        &[
            ".*com.google.firebase:firebase-inappmessaging.*",
            ".*com.google.firebase:firebase-inappmessaging-display.*",
            ".*com.google.firebase:firebase-inappmessaging-ktx.*",
            ".*com.google.firebase:firebase-inappmessaging-display-ktx.*",
        ],
    ),
    (
        "Firebase Installations",
        &[
            ".*com.google.firebase:firebase-installations.*",
            ".*com.google.firebase:firebase-installations-ktx.*",
        ],
    ),
    (
        "Firebase ML model downloader",
        &[
            ".*com.google.firebase:firebase-ml-modeldownloader.*",
            ".*com.google.firebase:firebase-ml-modeldownloader-ktx.*",
        ],
    ),
    (
        "Performance Monitoring",
        &[
            ".*com.google.firebase:firebase-perf.*",
            ".*com.google.firebase:firebase-perf-ktx.*",
        ],
    ),
    (
        "Realtime Database",
        &[
            ".*com.google.firebase:firebase-database.*",
            ".*com.google.firebase:firebase-database-ktx.*",
        ],
    ),
    (
        "Remote Config",
        &[
            ".*com.google.firebase:firebase-config.*",
            ".*com.google.firebase:firebase-config-ktx.*",
        ],
    ),
    (
        "RevenueCat",
        &[
            ".*com.revenuecat.purchases:purchases.*",
            ".*com.revenuecat.purchases:purchases-store-amazon.*",
        ],
    ),
    (
        "User Messaging Platform SDK",
        &[".*com.google.android.ump:user-messaging-platform.*"],
    ),
    (
        "reCAPTCHA Enterprise",
        &[".*com.google.android.gms:play-services-recaptcha.*"],
    ),
    ("ARCore", &[".*com.google.ar:core:.*"]),
    (
        "ML Kit (Google Play services)",
        &[
            ".*com.google.android.gms:play-services-mlkit-barcode-scanning.*",
            ".*com.google.android.gms:play-services-mlkit-face-detection.*",
            ".*com.google.android.gms:play-services-mlkit-image-labeling.*",
            ".*com.google.android.gms:play-services-mlkit-image-labeling-custom.*",
            ".*com.google.android.gms:play-services-mlkit-language-id.*",
            ".*com.google.android.gms:play-services-mlkit-text-recognition.*",
            ".*com.google.android.gms:play-services-code-scanner.*",
        ],
    ),
    (
        "ML Kit",
        &[
            ".*com.google.mlkit:barcode-scanning.*",
            ".*com.google.mlkit:camera.*",
            ".*com.google.mlkit:digital-ink-recognition.*",
            ".*com.google.mlkit:entity-extraction.*",
            ".*com.google.mlkit:face-detection.*",
            ".*com.google.mlkit:image-labeling.*",
            ".*com.google.mlkit:image-labeling-custom.*",
            ".*com.google.mlkit:language-id.*",
            ".*com.google.mlkit:linkfirebase.*",
            ".*com.google.mlkit:object-detection.*",
            ".*com.google.mlkit:object-detection-custom.*",
            ".*com.google.mlkit:playstore-dynamic-feature-support.*",
            ".*com.google.mlkit:pose-detection.*",
            ".*com.google.mlkit:pose-detection-accurate.*",
            ".*com.google.mlkit:segmentation-selfie.*",
            ".*com.google.mlkit:smart-reply.*",
            ".*com.google.mlkit:text-recognition.*",
            ".*com.google.mlkit:text-recognition-chinese.*",
            ".*com.google.mlkit:text-recognition-devanagari.*",
            ".*com.google.mlkit:text-recognition-japanese.*",
            ".*com.google.mlkit:text-recognition-korean.*",
            ".*com.google.mlkit:translate.*",
        ],
    ),
    (
        "Google Cast (cast-tv)",
        &[".*com.google.android.gms:play-services-cast-tv.*"],
    ),
    (
        "Google Maps",
        &[".*com.google.android.gms:play-services-maps.*"],
    ),
    (
        "Google Pay - Wallet SDK",
        &[".*com.google.android.gms:play-services-wallet.*"],
    ),
    (
        "Google Pay - TapandPay SDK",
        &[".*com.google.android.gms:play-services-tapandpay.*"],
    ),
    (
        "SafetyNet",
        &[".*com.google.android.gms:play-services-safetynet.*"],
    ),
    (
        "Google Play Integrity",
        &[".*com.google.android.play:integrity.*"],
    ),
    (
        "Snowplow Android Tracker",
        &[".*com.snowplowanalytics:snowplow-android-tracker.*"],
    ),
    ("Kochava", &[".*com.kochava.base:tracker.*"]),
    (
        "Airship SDK",
        &[
            ".*com.urbanairship.android:urbanairship-fcm.*",
            ".*com.urbanairship.android:urbanairship-hms.*",
            ".*com.urbanairship.android:urbanairship-message-center.*",
            ".*com.urbanairship.android:urbanairship-adm.*",
            ".*com.urbanairship.android:urbanairship-preference-center.*",
            ".*com.urbanairship.android:urbanairship-automation.*",
        ],
    ),
    ("Appodeal SDK for Android", &[".*com.appodeal.ads:sdk.*"]),
    ("Apptentive", &[".*com.apptentive:apptentive-android.*"]),
    ("Branch", &[".*io.branch.sdk.android:library.*"]),
    ("Braze Android SDK", &[".*com.appboy:android-sdk-ui.*"]),
    ("Bugsnag", &[".*com.bugsnag:bugsnag-android.*"]),
    (
        "CleverTap Android SDK",
        &[".*com.clevertap.android:clevertap-android-sdk.*"],
    ),
    ("Fyber Marketplace SDK", &[".*com.fyber:marketplace-sdk.*"]),
    ("HyprMX", &[".*com.hyprmx.android:HyprMX-SDK.*"]),
    ("Instabug", &[".*com.instabug.library:instabug.*"]),
    (
        "Interactive Media Ads (IMA) SDK",
        &[".*com.google.ads.interactivemedia.v3:interactivemedia.*"],
    ),
    (
        "MoEngage Android SDK",
        &[".*com.moengage:moe-android-sdk.*"],
    ),
    ("Ogury SDK", &[".*co.ogury:ogury-sdk.*"]),
    ("Pangle Ad SDK", &[".*com.pangle.global:ads-sdk.*"]),
    ("Pollfish", &[".*com.pollfish:pollfish-googleplay.*"]),
    ("PubMatic OpenWrap SDK", &[".*com.pubmatic.sdk:openwrap.*"]),
    ("Singular SDK", &[".*com.singular.sdk:singular_sdk.*"]),
    (
        "Smaato NextGen SDK",
        &[
            ".*com.smaato.android.sdk:smaato-sdk.*",
            ".*com.smaato.android.sdk:smaato-sdk-rewarded-ads.*",
            ".*com.smaato.android.sdk:smaato-sdk-banner.*",
            ".*com.smaato.android.sdk:smaato-sdk-interstitial.*",
        ],
    ),
    (
        "Start.io (Formerly StartApp)",
        &[".*com.startapp:inapp-sdk.*"],
    ),
    ("Taboola SDK", &[".*com.taboola:android-sdk.*"]),
    (
        "Verve Group HyBid SDK (formerly PubNative)",
        &[".*net.pubnative:hybid.sdk.*"],
    ),
];
