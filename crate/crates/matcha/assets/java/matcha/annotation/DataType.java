package matcha.annotation;

/** Google Play data safety data types (taxonomy 2022.1). */
public enum DataType {
    // Personal info
    Name,
    EmailAddress,
    UserId,
    Address,
    PhoneNumber,
    RaceAndEthnicity,
    PoliticalOrReligiousBeliefs,
    SexualOrientation,
    OtherPersonalInfo,
    // Financial info
    UserPaymentInfo,
    PurchaseHistory,
    CreditScore,
    OtherFinancialInfo,
    // Calendar
    CalendarEvents,
    // Photos and videos
    Photos,
    Videos,
    // Contacts
    Contacts,
    // Location
    ApproximateLocation,
    PreciseLocation,
    // Health and fitness
    HealthInfo,
    FitnessInfo,
    // Messages
    Emails,
    SmsOrMms,
    InAppMessages,
    // Device or other IDs
    DeviceOrOtherIds,
    // Files and docs
    FilesAndDocs,
    // Audio
    VoiceOrSoundRecordings,
    MusicFiles,
    OtherUserAudioFiles,
    // App activity
    AppInteractions,
    InstalledApps,
    InAppSearchHistory,
    OtherUserGeneratedContent,
    OtherUserActivities,
    // Web browsing
    WebBrowsingHistory,
    // App info and performance
    CrashLogs,
    Diagnostics,
    OtherAppPerformanceData
}
