package matcha.annotation;

import java.lang.annotation.ElementType;
import java.lang.annotation.Retention;
import java.lang.annotation.RetentionPolicy;
import java.lang.annotation.Target;

/** Marks a variable holding user data read on the device. */
@Retention(RetentionPolicy.SOURCE)
@Target({ElementType.FIELD, ElementType.LOCAL_VARIABLE, ElementType.PARAMETER})
public @interface DataAccess {
    /** Project-unique id cited by {@link DataTransmission#accessId()}. */
    String id();

    DataType[] dataType();
}
